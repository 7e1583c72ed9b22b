#pragma once

#include <stdexcept>
#include <string>

namespace rsum {

enum class ErrorCode {
  invalid_input,
  degenerate_vector,
  instance_too_large,
  wrong_case,
  domain_error,
  out_of_range,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rsum
