#include <iostream>
#include <string>
#include <vector>

#include "rgp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rgp::cli::dispatch(std::move(args), std::cout, std::cerr);
}
