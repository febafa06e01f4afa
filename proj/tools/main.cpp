#include <iostream>

#include "steering_tools/commands.hpp"

int main(int argc, char** argv) {
  return steering::tools::run_cli(argc, argv, std::cout, std::cerr);
}
