#include "sumnet/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sumnet::run_cli(argc, argv, std::cout, std::cerr); }
