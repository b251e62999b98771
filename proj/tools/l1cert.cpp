#include "l1cert/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return l1cert::run(argc, argv, std::cout, std::cerr); }
