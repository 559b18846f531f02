#include <iostream>

#include "sasaki/cli.hpp"

int main(int argc, char** argv) { return sasaki::run_cli(argc, argv, std::cout, std::cerr); }
