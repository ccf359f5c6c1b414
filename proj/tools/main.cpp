#include <iostream>

#include "hkq/cli.hpp"

int main(int argc, char** argv) { return hkq::cli::run(argc, argv, std::cout, std::cerr); }
