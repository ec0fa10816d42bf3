#include <iostream>
#include <string>
#include <vector>

#include "qsk/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const qsk::cli::Outcome o = qsk::cli::run(args);
  std::cout << o.out;
  std::cerr << o.err;
  return o.exit_code;
}
