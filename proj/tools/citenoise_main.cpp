#include <iostream>

#include "citenoise/cli.hpp"

int main(int argc, char** argv) {
  return citenoise::cli::run_cli(argc, argv, std::cout, std::cerr);
}
