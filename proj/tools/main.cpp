#include <iostream>
#include <string>
#include <vector>

#include "dagdec/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dagdec::RunCli(args, std::cout, std::cerr);
}
