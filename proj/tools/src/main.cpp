#include <iostream>

#include "greenroute/cli.hpp"

int main(int argc, char** argv) { return greenroute::cli::run(argc, argv, std::cout, std::cerr); }
