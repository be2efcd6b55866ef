#pragma once

#include <ostream>

namespace orliczlab::cli {

/// Runs one `orliczlab <command> ...` invocation. Results go to out as JSON; on
/// failure a JSON error record goes to err and the return value is the error's
/// exit code (0 on success).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace orliczlab::cli
