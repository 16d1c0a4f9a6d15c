#include <iostream>
#include <string>
#include <vector>

#include "stlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stlab::run(args, std::cout, std::cerr);
}
