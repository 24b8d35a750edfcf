#include <iostream>

#include "lgram/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lgram::run_cli(args, std::cout, std::cerr);
}
