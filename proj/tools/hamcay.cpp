#include <iostream>
#include <string>
#include <vector>

#include "hamcay/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hamcay::run_cli(args, std::cout, std::cerr);
}
