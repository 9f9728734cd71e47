#include <iostream>
#include <string>
#include <vector>

#include "skewproj/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return skewproj::cli::run(args, std::cout, std::cerr);
}
