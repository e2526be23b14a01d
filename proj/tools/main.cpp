#include "toepsv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return toepsv::cli::run(argc, argv, std::cout, std::cerr); }
