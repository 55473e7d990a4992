#include "trotter_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return trotter::cli::run(argc, argv, std::cout, std::cerr);
}
