#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmc {

enum class ErrorCode {
  BadBounds,
  BadRank,
  BadShape,
  ShapeMismatch,
  BadObservation,
  NonPositiveEntryAtObservation,
  NonPositiveParameter,
  BadRadius,
  BadTau,
  BadConfig,
  SvdFailure,
  NoConvergence,
  ProjectionFailure,
  BacktrackOverflow,
  InvalidRegime,
  RankInfeasible,
  DegenerateRange,
  BadM,
  NonPositiveIntensity,
  IndivisibleLayout,
  UnsupportedFormat,
  CorruptFile,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code; every failure in the library
/// is reported through this type.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace pmc
