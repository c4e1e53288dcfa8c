#include <iostream>

#include "coulcs/cli.hpp"

int main(int argc, char** argv) {
  return coulcs::cli::run(argc, argv, std::cout, std::cerr);
}
