#include <iostream>
#include <string>
#include <vector>

#include "schlice/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return schlice::cli::run(std::move(args), std::cout, std::cerr);
}
