#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 analytic value not certified / not converged.

#include "maass/verify.hpp"

#include <iosfwd>
#include <string>

namespace maass {

enum ExitCode { exit_ok = 0, exit_failed = 1, exit_usage = 2, exit_unconverged = 3 };

enum class OutputFormat { json, csv, pretty };

/// Render a report. csv and pretty flatten nested fields to dotted keys; a
/// "terms" or "rows" array of objects becomes a table.
std::string render(const Report& r, OutputFormat f);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace maass
