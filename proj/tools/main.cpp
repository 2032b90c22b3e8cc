#include <iostream>

#include "kwent/cli.hpp"

int main(int argc, char** argv) { return kwent::cli::run(argc, argv, std::cout, std::cerr); }
