#include "tongues/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tongues::cli::run(argc, argv, std::cout, std::cerr); }
