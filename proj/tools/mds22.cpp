#include <iostream>
#include <string>
#include <vector>

#include "mds22/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mds22::run_cli(args, std::cout, std::cerr);
}
