#include <iostream>

#include "polykit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polykit::cli_dispatch(args, std::cout, std::cerr);
}
