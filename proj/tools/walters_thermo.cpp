#include <iostream>

#include "walters/cli.hpp"

int main(int argc, char** argv) { return walters::cli_main(argc, argv, std::cout, std::cerr); }
