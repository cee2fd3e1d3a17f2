#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mindiam::cli {

/// Runs one CLI invocation. Writes the run report (JSON) to `out` and error
/// text to `err`; returns the process exit code (0 on success, 2 + error
/// code otherwise).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mindiam::cli
