#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace soliton {

enum class ErrorKind {
  DegenerateJet,
  JetFailure,
  StepSizeUnderflow,
  NeckDegenerate,
  LightlikeGradient,
  UnknownSpace,
  NoRawData,
  UnsupportedLift,
  GlueMismatch,
  InversionFailure,
  NoEmbedding,
  TooFewNodes,
  DegenerateW,
  DegenerateMetric,
  DegenerateStart,
  OutOfDomain,
  InvalidArgument,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type; `kind()` carries
/// the stable error name printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace soliton
