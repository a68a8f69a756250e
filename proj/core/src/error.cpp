#include "variety/error.hpp"

namespace variety {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NegativeMass: return "NegativeMass";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::BadShape: return "BadShape";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadWeights: return "BadWeights";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotAProbability: return "NotAProbability";
    case Errc::NotBinary: return "NotBinary";
    case Errc::DomainError: return "DomainError";
    case Errc::InvalidKind: return "InvalidKind";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::EmptySampleSet: return "EmptySampleSet";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnknownQuestion: return "UnknownQuestion";
    case Errc::EmptyGroup: return "EmptyGroup";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace variety
