// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hm {

enum class errc {
  syntax_error,
  non_constant_exponent,
  domain_error,
  derivative_vanishes,
  bracket_invalid,
  bracket_failure,
  bracket_cap,
  non_finite,
  insufficient_samples,
  empty_input,
  non_positive_entry,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::syntax_error: return "SyntaxError";
    case errc::non_constant_exponent: return "NonConstantExponent";
    case errc::domain_error: return "DomainError";
    case errc::derivative_vanishes: return "DerivativeVanishes";
    case errc::bracket_invalid: return "BracketInvalid";
    case errc::bracket_failure: return "BracketFailure";
    case errc::bracket_cap: return "BracketCap";
    case errc::non_finite: return "NonFinite";
    case errc::insufficient_samples: return "InsufficientSamples";
    case errc::empty_input: return "EmptyInput";
    case errc::non_positive_entry: return "NonPositiveEntry";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

// Library-wide exception. `position` is meaningful for parser errors only
// (byte offset into the input, -1 otherwise).
class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message, long position = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        position_(position) {}

  errc code() const noexcept { return code_; }
  long position() const noexcept { return position_; }

 private:
  errc code_;
  long position_;
};

}  // namespace hm
