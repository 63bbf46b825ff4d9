#include <doctest.h>

TEST_SUITE_BEGIN("etdrk4");
TEST_SUITE_END();
