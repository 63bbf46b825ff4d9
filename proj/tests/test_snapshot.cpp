#include <doctest.h>

TEST_SUITE_BEGIN("snapshot");
TEST_SUITE_END();
