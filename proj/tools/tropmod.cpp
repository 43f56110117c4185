#include <iostream>

#include "tropmod/cli/cli.hpp"

int main(int argc, char** argv) {
  return tropmod::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
