#include "texclass/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return texclass::run_cli(argc, argv, std::cout, std::cerr); }
