#include <iostream>

#include "freshroute/cli.hpp"

int main(int argc, char **argv) { return freshroute::cli::run(argc, argv, std::cout, std::cerr); }
