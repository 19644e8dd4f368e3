#include <string>
#include <vector>

#include "tailcert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tailcert::run_cli(args);
}
