#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsfrag::cli {

enum class Status { ok, error };

struct CommandResult {
  Status status = Status::ok;
  int exit_code = 0;       // 0 ok, 2 usage, 3 parse error, 4 domain error
  std::string text;        // plain output (or the JSON document with --json)
  std::vector<std::string> diagnostics;
};

// argv without the program name, e.g. {"shadow", "(2*w^2+3)/(w^2-w)"}.
CommandResult run_command(const std::vector<std::string>& args);

// Stateless read-eval loop: each line is a command ("shadow 1/w") or a bare
// expression, which is evaluated. Returns 0.
int run_repl(std::istream& in, std::ostream& out, bool json = false, bool prompt = false);

}  // namespace nsfrag::cli
