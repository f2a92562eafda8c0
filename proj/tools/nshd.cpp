#include <iostream>

#include "nshd/cli.hpp"

int main(int argc, char** argv) {
  return nshd::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
