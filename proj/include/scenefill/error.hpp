#pragma once

#include <stdexcept>
#include <string>

namespace scenefill {

// Failure classes map one-to-one onto CLI exit codes.
enum class ErrorCode {
  IoError = 2,
  DimensionMismatch = 3,
  EmptyRegion = 4,
  SourceExhausted = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }
  int exitCode() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

}  // namespace scenefill
