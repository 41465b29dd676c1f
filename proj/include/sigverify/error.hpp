#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sigverify {

/// Stable identifiers for every failure the toolkit reports. The CLI prints
/// these verbatim, so renaming one is a breaking change.
enum class ErrorCode {
  invalid_argument,
  blank_signature,
  border_pixel,
  image_too_small,
  signal_too_short,
  dimension_mismatch,
  empty_data,
  not_converged,
  insufficient_samples,
  io,
  decode,
  parse,
  unsupported_version,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the one-class SVM solver when the KKT gap is still open after
/// the iteration budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double violation)
      : Error(ErrorCode::not_converged, message), violation_(violation) {}

  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

}  // namespace sigverify
