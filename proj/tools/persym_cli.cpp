#include <iostream>
#include <string>
#include <vector>

#include "persym/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return persym::cli::run(args, std::cout, std::cerr);
}
