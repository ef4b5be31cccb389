#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lochf {

enum class Errc {
  invalid_input,
  parse_error,
  field_mismatch,
  zero_element,
  precision_exceeded,
  precision_unstable,
  gcd_not_one,
  not_a_factorization,
  not_in_ideal,
  not_invertible,
  not_minimal,
  not_strict,
  window_too_short,
  not_dimension_one,
  search_exhausted,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// command-line driver maps them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lochf
