#include <doctest.h>
TEST_SUITE("rng") {}
