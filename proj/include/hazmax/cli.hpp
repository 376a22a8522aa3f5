// Command-line front end. Each subcommand loads a circuit through the same
// format/delay pipeline and calls one library operation.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hazmax::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,   // unreadable/invalid input, or `check` found violations
  kBudgetExhausted = 3,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hazmax::cli
