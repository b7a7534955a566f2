#include <exception>
#include <iostream>

#include "kstab/cli.hpp"

int main(int argc, char** argv) {
  try {
    return kstab::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
