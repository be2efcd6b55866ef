#include "orliczlab/errors.hpp"

namespace orliczlab {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::DegenerateField: return "degenerate-field";
    case ErrorCode::GridBudget: return "grid-budget";
    case ErrorCode::Cfl: return "cfl-violation";
    case ErrorCode::GridMismatch: return "grid-mismatch";
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::Io: return "io-error";
  }
  return "unknown";
}

}  // namespace orliczlab
