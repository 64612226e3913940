#pragma once

#include <stdexcept>
#include <string>

namespace infolattice {

// Mirrors il_status in the C API; numeric values are part of that ABI.
enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  normalization = 3,
  negative_mass = 4,
  duplicate_assignment = 5,
  cardinality = 6,
  zero_mass = 7,
  out_of_support = 8,
  out_of_range = 9,
  io = 10,
  internal = 11,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace infolattice
