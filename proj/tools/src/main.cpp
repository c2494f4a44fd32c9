#include <iostream>
#include <string>
#include <vector>

#include "sq3/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sq3::cli::main_entry(args, std::cout, std::cerr);
}
