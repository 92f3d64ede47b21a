#include <iostream>

#include "wfc_cli/cli.hpp"

int main(int argc, char** argv) { return wfc::cli::run_cli(argc, argv, std::cout, std::cerr); }
