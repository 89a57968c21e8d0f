#include <iostream>

#include "semifib/cli.hpp"

int main(int argc, char** argv) {
  return semifib::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
