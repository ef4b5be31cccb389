#include "lochf/error.hpp"

namespace lochf {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_input: return "InvalidInput";
    case Errc::parse_error: return "ParseError";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::zero_element: return "ZeroElement";
    case Errc::precision_exceeded: return "PrecisionExceeded";
    case Errc::precision_unstable: return "PrecisionUnstable";
    case Errc::gcd_not_one: return "GcdNotOne";
    case Errc::not_a_factorization: return "NotAFactorization";
    case Errc::not_in_ideal: return "NotInIdeal";
    case Errc::not_invertible: return "NotInvertible";
    case Errc::not_minimal: return "NotMinimal";
    case Errc::not_strict: return "NotStrict";
    case Errc::window_too_short: return "WindowTooShort";
    case Errc::not_dimension_one: return "NotDimensionOne";
    case Errc::search_exhausted: return "SearchExhausted";
  }
  return "Unknown";
}

}  // namespace lochf
