#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lochf::locring {

/// Exponent vector of a monomial in a fixed, ordered set of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exponents_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents);

  static Monomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const noexcept { return exponents_.size(); }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exponents_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return exponents_; }

  bool divides(const Monomial& other) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// other / *this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exponents_ == b.exponents_;
  }

  /// "X^2*Y", or "1" for the unit monomial.
  std::string to_string(std::span<const std::string> names) const;

 private:
  std::vector<std::uint32_t> exponents_;
  std::uint32_t degree_ = 0;
};

/// Degree-lexicographic comparison with x_1 > x_2 > ... : lower degree sorts
/// first, and within a degree the lexicographically larger exponent vector
/// is the greater monomial.
std::strong_ordering deglex_compare(const Monomial& a, const Monomial& b);

struct DegLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return deglex_compare(a, b) < 0;
  }
};

/// All monomials of the given degree, lexicographically largest first.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t degree);

}  // namespace lochf::locring
