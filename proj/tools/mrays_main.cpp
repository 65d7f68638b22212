#include <iostream>

#include "mrays/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mrays::run_cli(args, std::cout, std::cerr);
}
