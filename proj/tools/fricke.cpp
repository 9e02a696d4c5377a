#include "fricke/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fricke::cli::main(args, std::cin, std::cout);
}
