#include <iostream>
#include <string>
#include <vector>

#include "symquad/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return symquad::cli::run(args, std::cout, std::cerr);
}
