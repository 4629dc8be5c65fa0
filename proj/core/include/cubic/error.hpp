#pragma once

#include <stdexcept>
#include <string>

namespace cubic {

enum class ErrorCode {
  kInvalidInput,
  kInvalidDerivativeOrder,
  kInvalidBranch,
  kBoundary,
  kNoConvergence,
};

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cubic
