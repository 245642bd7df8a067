#include <iostream>
#include <string>
#include <vector>

#include "sumsetlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return sumsetlab::cli::run(args, std::cout, std::cerr);
}
