#include <iostream>
#include <string>
#include <vector>

#include "hornred/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  auto r = hornred::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
