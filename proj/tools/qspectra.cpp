#include <iostream>

#include "qspectra/cli.hpp"

int main(int argc, char** argv) {
  return qspectra::cli::run(argc, argv, std::cout, std::cerr);
}
