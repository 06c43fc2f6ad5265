#include <iostream>
#include <string>
#include <vector>

#include "lukprob/cli.hpp"

int main(int argc, char** argv) {
  return lukprob::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
