#include "sigverify/error.hpp"

namespace sigverify {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::blank_signature: return "blank_signature";
    case ErrorCode::border_pixel: return "border_pixel";
    case ErrorCode::image_too_small: return "image_too_small";
    case ErrorCode::signal_too_short: return "signal_too_short";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::empty_data: return "empty_data";
    case ErrorCode::not_converged: return "not_converged";
    case ErrorCode::insufficient_samples: return "insufficient_samples";
    case ErrorCode::io: return "io";
    case ErrorCode::decode: return "decode";
    case ErrorCode::parse: return "parse";
    case ErrorCode::unsupported_version: return "unsupported_version";
  }
  return "unknown";
}

}  // namespace sigverify
