#include <iostream>

#include "ellfib/cli.hpp"

int main(int argc, char** argv) { return ellfib::run_cli(argc, argv, std::cout, std::cerr); }
