#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oofa::cli {

/// Runs one `oofa` invocation. `args` excludes the program name.
/// Returns 0 on success, 2 on validation errors, 1 on numerical failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oofa::cli
