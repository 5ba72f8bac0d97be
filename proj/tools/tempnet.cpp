#include <iostream>
#include <string>
#include <vector>

#include "tempnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tempnet::run(args, std::cout, std::cerr);
}
