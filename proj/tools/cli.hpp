#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ave::cli {

/// Entry point behind the `ave` executable. Returns the process exit code:
/// 0 when every run converged, 2 when some run did not, 1 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ave::cli
