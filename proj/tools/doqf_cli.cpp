#include <iostream>

#include "doqf/cli.hpp"

int main(int argc, char** argv) { return doqf::run_cli(argc, argv, std::cout, std::cerr); }
