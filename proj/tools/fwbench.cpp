#include <iostream>
#include <string>
#include <vector>

#include "l0l1fw/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return l0l1fw::run_cli(args, std::cout, std::cerr);
}
