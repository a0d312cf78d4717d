#include <iostream>

#include "ccm/cli.hpp"

int main(int argc, char** argv) { return ccm::run_cli(argc, argv, std::cout, std::cerr); }
