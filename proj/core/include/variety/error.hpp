#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace variety {

enum class Errc {
  NegativeMass,
  NotNormalized,
  BadShape,
  ShapeMismatch,
  BadWeights,
  LengthMismatch,
  NotAProbability,
  NotBinary,
  DomainError,
  InvalidKind,
  QuadratureFailure,
  EmptySampleSet,
  ParseError,
  ValidationError,
  UnknownQuestion,
  EmptyGroup,
  ConfigError,
  IoError,
};

[[nodiscard]] std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace variety
