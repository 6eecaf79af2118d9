#include <iostream>

#include "twinfock/cli.hpp"

int main(int argc, char** argv) {
  return twinfock::cli::main_entry(argc, argv, std::cout, std::cerr);
}
