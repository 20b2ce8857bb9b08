#include "hek/error.hpp"

namespace hek {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::StepCollapse: return "StepCollapse";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::GuardBandTooWide: return "GuardBandTooWide";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace hek
