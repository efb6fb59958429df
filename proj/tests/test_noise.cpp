#include <doctest.h>
TEST_SUITE("noise") {}
