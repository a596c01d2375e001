#include <iostream>

#include "nbsize/cli.hpp"

int main(int argc, char** argv) { return nbsize::cli::main(argc, argv, std::cout, std::cerr); }
