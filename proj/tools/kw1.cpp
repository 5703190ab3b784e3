#include <iostream>
#include <string>
#include <vector>

#include "kw1/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kw1::run_cli(args, std::cout, std::cerr);
}
