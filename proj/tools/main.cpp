#include <iostream>

#include "hopfstar/cli.hpp"

int main(int argc, char** argv) { return hopfstar::cli::run({argv + 1, argv + argc}, std::cout, std::cerr); }
