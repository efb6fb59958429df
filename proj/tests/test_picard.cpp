#include <doctest.h>
TEST_SUITE("picard") {}
