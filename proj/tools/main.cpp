#include <iostream>

#include "norden/cli.hpp"

int main(int argc, char** argv) {
  return norden::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
