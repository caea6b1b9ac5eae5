#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace volterra {

/// Runs the command-line front end in-process.
/// Exit codes: 0 success, 1 comparison failure (tolerance exceeded),
/// 2 usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace volterra
