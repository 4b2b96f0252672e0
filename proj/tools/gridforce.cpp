#include <iostream>
#include <string>
#include <vector>

#include "gridforce/cli.hpp"

int main(int argc, char** argv) {
  return gridforce::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
