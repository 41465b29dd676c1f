#include <iostream>
#include <string>
#include <vector>

#include "sigverify/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sigverify::cli_dispatch(args, std::cout, std::cerr);
}
