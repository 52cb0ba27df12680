#include <iostream>
#include <string>
#include <vector>

#include "p8q/cli.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return p8q::cli::run(args, std::cout, std::cerr);
}
