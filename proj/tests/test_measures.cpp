#include <doctest.h>
TEST_SUITE("measures") {}
