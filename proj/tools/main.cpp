#include <iostream>

#include "regconst/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return regconst::run(args, std::cout, std::cerr);
}
