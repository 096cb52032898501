#include <iostream>

#include "numrad/cli.hpp"

int main(int argc, char** argv) { return numrad::cli::main(argc, argv, std::cout, std::cerr); }
