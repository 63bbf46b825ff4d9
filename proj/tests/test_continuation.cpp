#include <doctest.h>

TEST_SUITE_BEGIN("continuation");
TEST_SUITE_END();
