// Single translation unit for the amalgamated Catch2 implementation.
// Every test binary links against this to get the test runner's main().
#include <catch2/catch_amalgamated.cpp>
