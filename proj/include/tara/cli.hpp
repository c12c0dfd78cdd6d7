#pragma once

#include <ostream>

namespace tara::cli {

/// Runs the command line. Returns 0 on success, 1 on validation or parse
/// errors, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tara::cli
