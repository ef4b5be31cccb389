#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace lochf::exactla {

class Scalar;

/// Coefficient field: the rationals or a prime field F_p with p < 2^31.
class FieldSpec {
 public:
  enum class Kind { rationals, prime };

  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(std::uint32_t p);
  /// Accepts "q" or "fp:<p>".
  static FieldSpec parse(std::string_view text);

  Kind kind() const noexcept { return p_ == 0 ? Kind::rationals : Kind::prime; }
  bool is_prime_field() const noexcept { return p_ != 0; }
  /// Zero for the rationals.
  std::uint32_t characteristic() const noexcept { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long value) const;
  Scalar from_rational(const mpq_class& value) const;

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  explicit FieldSpec(std::uint32_t p) : p_(p) {}

  std::uint32_t p_ = 0;
};

/// An exact field element. Prime-field values are kept as residues in [0, p);
/// rational values as canonical GMP fractions. Mixing fields throws.
class Scalar {
 public:
  /// Rational zero.
  Scalar() = default;

  FieldSpec field() const;
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  Scalar inverse() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Rational value; prime-field residues map to their symmetric
  /// representative in (-p/2, p/2].
  mpq_class to_rational() const;
  /// Residue in [0, p); only valid for prime-field scalars.
  std::int64_t residue() const;
  /// Integers print bare, fractions as "a/b"; prime-field values print their
  /// symmetric representative.
  std::string to_string() const;

 private:
  friend class FieldSpec;

  void check_same_field(const Scalar& other) const;

  std::uint32_t p_ = 0;
  std::variant<std::int64_t, mpq_class> value_{mpq_class(0)};
};

}  // namespace lochf::exactla
