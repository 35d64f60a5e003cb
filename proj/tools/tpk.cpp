#include <iostream>

#include "tpk/cli.hpp"

int main(int argc, char** argv) {
  return tpk::cli::run(argc, argv, std::cout, std::cerr);
}
