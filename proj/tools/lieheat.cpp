#include "lieheat/harness.hpp"

#include <iostream>

int main(int argc, char** argv) { return lieheat::cli(argc, argv, std::cout, std::cerr); }
