#include <iostream>

#include "jackdiv/cli.hpp"

int main(int argc, char** argv) { return jackdiv::cli_main(argc, argv, std::cout, std::cerr); }
