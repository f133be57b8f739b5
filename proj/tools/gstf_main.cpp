#include <iostream>
#include <string>
#include <vector>

#include "gstf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gstf::cli::run_command(args, std::cout, std::cerr);
}
