#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace its {

enum class ErrorCode {
  Internal,
  Numerical,          // Cholesky failure, near-unit-root parameters
  SingularDesign,
  Convergence,
  Config,
  InterventionRange,
  Domain,
  Data,               // gaps, non-finite values, shape mismatches
  Parse,
  InsufficientData,
  Io,
};

// Machine-parsable name, e.g. "E_INTERVENTION_RANGE".
std::string_view error_code_name(ErrorCode code) noexcept;

// Process exit status: 1 internal/numerical, 2 config/validation, 3 data.
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace its
