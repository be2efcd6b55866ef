#pragma once

#include <stdexcept>
#include <string>

namespace orliczlab {

enum class ErrorCode {
  InvalidArgument = 2,
  Overflow = 3,
  NonConvergence = 4,
  DegenerateField = 5,
  GridBudget = 6,
  Cfl = 7,
  GridMismatch = 8,
  Parse = 9,
  Io = 10,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& w) : Error(ErrorCode::InvalidArgument, w) {}
};
struct OverflowError : Error {
  explicit OverflowError(const std::string& w) : Error(ErrorCode::Overflow, w) {}
};
struct NonConvergence : Error {
  explicit NonConvergence(const std::string& w) : Error(ErrorCode::NonConvergence, w) {}
};
struct DegenerateField : Error {
  explicit DegenerateField(const std::string& w) : Error(ErrorCode::DegenerateField, w) {}
};
struct GridBudgetError : Error {
  explicit GridBudgetError(const std::string& w) : Error(ErrorCode::GridBudget, w) {}
};
struct CflViolation : Error {
  explicit CflViolation(const std::string& w) : Error(ErrorCode::Cfl, w) {}
};
struct GridMismatch : Error {
  explicit GridMismatch(const std::string& w) : Error(ErrorCode::GridMismatch, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCode::Parse, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::Io, w) {}
};

}  // namespace orliczlab
