#include <exception>
#include <iostream>

#include "akhlab/cli.hpp"

int main(int argc, char** argv) {
  try {
    return akhlab::cli::main_entry(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "akhlab: " << e.what() << '\n';
    return 1;
  }
}
