#include <iostream>

#include "eqdecomp/cli.hpp"

int main(int argc, char** argv) { return eqd::cli::main_entry(argc, argv, std::cout, std::cerr); }
