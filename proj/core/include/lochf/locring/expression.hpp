#pragma once

#include <span>
#include <string>
#include <string_view>

#include "lochf/locring/polynomial.hpp"

namespace lochf::locring {

/// Parses a polynomial expression such as "Y^3 - X*Z" or "-(x+y)^2/2".
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*      division by constants only
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' integer)?
///   primary := integer | variable | '(' expr ')'
///
/// Variables must be one of `names`. Errors raise Errc::parse_error with the
/// 1-based column of the offending token.
Polynomial parse_polynomial(std::string_view text,
                            std::span<const std::string> names, FieldSpec field);

}  // namespace lochf::locring
