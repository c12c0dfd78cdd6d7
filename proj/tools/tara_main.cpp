#include <iostream>

#include "tara/cli.hpp"

int main(int argc, char** argv) { return tara::cli::run(argc, argv, std::cout, std::cerr); }
