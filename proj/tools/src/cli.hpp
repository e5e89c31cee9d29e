#pragma once

#include <ostream>
#include <span>
#include <string>

namespace semtoken::cli {

/// Runs the command line `args` (program name excluded) and returns the
/// process exit code. Errors are reported on `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace semtoken::cli
