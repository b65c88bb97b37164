#include <iostream>

#include "hyx/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return hyx::cli::run({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
