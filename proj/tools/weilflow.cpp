#include <iostream>

#include "weilflow/cli.hpp"

int main(int argc, char** argv) { return weilflow::cli::main_entry(argc, argv, std::cout, std::cerr); }
