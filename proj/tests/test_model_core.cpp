#include <doctest.h>
TEST_SUITE("model_core") {}
