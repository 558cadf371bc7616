#include <iostream>

#include "nsbayes/cli.hpp"

int main(int argc, char** argv) { return nsbayes::run_cli(argc, argv, std::cout, std::cerr); }
