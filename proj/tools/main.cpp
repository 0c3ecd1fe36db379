#include <iostream>

#include "nonpolar/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nonpolar::cli::run(args, std::cout, std::cerr);
}
