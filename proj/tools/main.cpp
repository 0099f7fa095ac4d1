#include <iostream>
#include <string>
#include <vector>

#include "trialab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return trialab::run_cli(args, std::cout, std::cerr);
}
