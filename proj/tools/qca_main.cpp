#include <string>
#include <vector>

#include "qca/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qca::cli::run(args);
}
