// Command-line front end.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lukprob::cli {

/// Exit codes.
enum Exit : int { Ok = 0, NotValid = 1, Unknown = 2, Usage = 3 };

/// Runs one command line (args[0] is the program name). Defaults for the
/// prover caps come from LUKPROB_MAX_BRANCHES, LUKPROB_TIME_LIMIT and
/// LUKPROB_BASIS_CAP when set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lukprob::cli
