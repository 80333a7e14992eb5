#include "hypotest/cli.hpp"

int main(int argc, char** argv) { return hypotest::cli_main(argc, argv); }
