#include <doctest.h>

TEST_SUITE_BEGIN("blowup");
TEST_SUITE_END();
