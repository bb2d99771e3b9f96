#include <iostream>
#include <string>
#include <vector>

#include "fnn/report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fnn::cli::run(args, std::cout, std::cerr);
}
