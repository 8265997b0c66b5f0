#include <iostream>
#include <string>
#include <vector>

#include "reflekt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return reflekt::cli::run(args, std::cout, std::cerr);
}
