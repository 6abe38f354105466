#include "revzeta/error.hpp"

namespace revzeta {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NonDecayDetected: return "NonDecayDetected";
    case ErrorKind::TailBoundUnmet: return "TailBoundUnmet";
    case ErrorKind::StiffnessFailure: return "StiffnessFailure";
    case ErrorKind::ToleranceUnmet: return "ToleranceUnmet";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace revzeta
