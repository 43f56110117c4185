#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropmod {

/// Runs the command line `args` (without the program name). Results go to
/// `out` as JSON unless -o names a file. Returns 0 on success, 1 on a domain
/// error (an {"error": {"code", "message"}} object is written to `out`) and
/// 2 on a usage error (diagnostics go to `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropmod
