#include <iostream>

#include "bergespec/cli/commands.hpp"

int main(int argc, char** argv) { return bergespec::cli::run_cli(argc, argv, std::cout, std::cerr); }
