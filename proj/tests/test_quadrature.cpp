#include <doctest.h>
TEST_SUITE("quadrature") {}
