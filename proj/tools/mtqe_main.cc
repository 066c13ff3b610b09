#include <iostream>
#include <string>
#include <vector>

#include "mtqe/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mtqe::run_cli(args, std::cout, std::cerr);
}
