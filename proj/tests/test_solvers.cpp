#include <doctest.h>
TEST_SUITE("solvers") {}
