#include "maass/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return maass::run_cli(argc, argv, std::cout, std::cerr); }
