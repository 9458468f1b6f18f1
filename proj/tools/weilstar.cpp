#include <iostream>

#include "weilstar/cli.hpp"

int main(int argc, char** argv) {
  return weilstar::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
