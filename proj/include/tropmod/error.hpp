#pragma once

#include <stdexcept>
#include <string>

namespace tropmod {

/// Domain error carrying a stable machine-readable code.
///
/// Every precondition failure of a library operation surfaces as an `Error`;
/// the CLI turns it into `{"error": {"code": ..., "message": ...}}` and exit 1.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace tropmod
