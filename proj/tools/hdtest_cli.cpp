#include <iostream>

#include "hdtest/cli.hpp"

int main(int argc, char** argv) {
  return hdtest::cli::parse_and_dispatch(argc, argv, std::cout, std::cerr);
}
