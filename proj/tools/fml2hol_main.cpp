#include <iostream>

#include "fml2hol/cli.hpp"

int main(int argc, char** argv) {
  return fml2hol::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
