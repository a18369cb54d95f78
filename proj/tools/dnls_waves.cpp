#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "dnls/cli.hpp"

int main(int argc, char** argv) {
  const bool color = std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO);
  return dnls::cli::run(argc, argv, std::cout, std::cerr, color);
}
