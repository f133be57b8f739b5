#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gstf/types.hpp"

namespace gstf::cli {

enum ExitCode : int { kOk = 0, kAssertFailed = 1, kError = 2 };

/// Runs one subcommand. `args` excludes the program name, e.g.
/// {"classify", "--expr", "gaussian(1)", "--s", "0.5"}. Reports go to the
/// --out file when given, otherwise to `out`; errors go to `err` as
/// "error: <Kind>: <message>".
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Two or three columns (x, re[, im]); blank lines, '#' comments and one
/// non-numeric header line are skipped. x must be strictly increasing and
/// uniform to 1e-9 relative.
SampledFunction read_sampled_csv(const std::string& path);

/// %.17g; infinities as "inf" / "-inf".
std::string format_double(double v);

}  // namespace gstf::cli
