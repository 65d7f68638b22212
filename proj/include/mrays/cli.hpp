#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrays {

/// Runs one CLI invocation. `args` excludes the program name. Returns 0 on
/// success, 1 on domain or I/O errors (including failed verification), 2 on
/// usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrays
