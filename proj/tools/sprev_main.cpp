#include <iostream>
#include <string>
#include <vector>

#include "sprev/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sprev::run_cli(args, std::cout, std::cerr);
}
