#include "nsfrag/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  nsfrag::cli::CommandResult r = nsfrag::cli::run_command(args);
  if (!r.text.empty()) (r.exit_code == 0 ? std::cout : std::cerr) << r.text << "\n";
  return r.exit_code;
}
