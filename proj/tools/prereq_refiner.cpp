#include <iostream>
#include <string>
#include <vector>

#include "prereq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return prereq::cli::main_entry(args, prereq::cli::process_environment(), std::cout, std::cerr);
}
