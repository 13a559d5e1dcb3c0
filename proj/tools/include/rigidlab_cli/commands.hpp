#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rigidlab::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kBadInput = 2,
  kBudgetExhausted = 3,
  kNegative = 4,  // check: not minimally rigid; henneberg: no sequence
};

/// Runs one command line (without the program name). Reads RIGIDLAB_SEED
/// for the default seed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rigidlab::cli
