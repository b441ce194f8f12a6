#include <iostream>

#include "contour/cli.hpp"

int main(int argc, char** argv) { return contour::cli::run(argc, argv, std::cout, std::cerr); }
