#include <iostream>

#include "hazmax/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hazmax::cli::run(args, std::cout, std::cerr);
}
