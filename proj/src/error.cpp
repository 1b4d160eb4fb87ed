#include "its/error.hpp"

namespace its {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Internal: return "E_INTERNAL";
    case ErrorCode::Numerical: return "E_NUMERICAL";
    case ErrorCode::SingularDesign: return "E_SINGULAR_DESIGN";
    case ErrorCode::Convergence: return "E_CONVERGENCE";
    case ErrorCode::Config: return "E_CONFIG";
    case ErrorCode::InterventionRange: return "E_INTERVENTION_RANGE";
    case ErrorCode::Domain: return "E_DOMAIN";
    case ErrorCode::Data: return "E_DATA";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::InsufficientData: return "E_INSUFFICIENT_DATA";
    case ErrorCode::Io: return "E_IO";
  }
  return "E_INTERNAL";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Internal:
    case ErrorCode::Numerical:
    case ErrorCode::SingularDesign:
    case ErrorCode::Convergence:
      return 1;
    case ErrorCode::Config:
    case ErrorCode::InterventionRange:
    case ErrorCode::Domain:
      return 2;
    case ErrorCode::Data:
    case ErrorCode::Parse:
    case ErrorCode::InsufficientData:
    case ErrorCode::Io:
      return 3;
  }
  return 1;
}

}  // namespace its
