#include "mqc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mqc::run_cli(argc, argv, std::cout, std::cerr); }
