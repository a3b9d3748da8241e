#include <iostream>

#include "rumid/cli.hpp"

int main(int argc, char** argv) { return rumid::cli::run(argc, argv, std::cout, std::cerr); }
