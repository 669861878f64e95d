#include <iostream>

#include "collateral/cli/commands.hpp"

int main(int argc, char** argv) {
  return collateral::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
