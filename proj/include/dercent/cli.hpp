#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dercent::cli {

/// Exit codes of run().
enum Exit : int { ok = 0, verdict_fail = 1, parse_error = 2, hypothesis_failure = 3, internal = 4 };

/// Runs one command line (without the program name), writing reports to `out`
/// and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dercent::cli
