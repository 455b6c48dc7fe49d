#include "multibrot/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return multibrot::run(argc, argv, std::cout, std::cerr); }
