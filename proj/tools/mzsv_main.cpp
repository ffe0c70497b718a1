#include <span>
#include <string>
#include <vector>

#include "mzsv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mzsv::cli::parse_and_dispatch(args);
}
