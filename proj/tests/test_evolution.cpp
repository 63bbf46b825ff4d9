#include <doctest.h>

TEST_SUITE_BEGIN("evolution");
TEST_SUITE_END();
