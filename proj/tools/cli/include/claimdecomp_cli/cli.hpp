#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace claimdecomp::cli {

/// Runs one command line (without the program name). The report goes to
/// `out`, diagnostics to `err`. Returns 0 on success, 2 on a usage error and
/// 1 on a data or protocol error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace claimdecomp::cli
