#include <iostream>

#include "satrev/cli.hpp"

int main(int argc, char** argv) {
  return satrev::cli::run(argc, argv, std::cout, std::cerr);
}
