#include <iostream>
#include <string>
#include <vector>

#include "hdepth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hdepth::cli::run(args, std::cout, std::cerr);
}
