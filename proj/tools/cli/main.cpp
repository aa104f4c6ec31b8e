#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return conical_ab::cli::main_entry(argc, argv, std::cout, std::cerr);
}
