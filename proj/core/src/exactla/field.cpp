#include "lochf/exactla/field.hpp"

#include <charconv>

#include "lochf/error.hpp"

namespace lochf::exactla {
namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  old_s %= p;
  return old_s < 0 ? old_s + p : old_s;
}

std::int64_t mpz_residue(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::int64_t>(r.get_ui());
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw Error(Errc::invalid_input,
                "field characteristic " + std::to_string(p) +
                    " is not a prime below 2^31");
  }
  return FieldSpec(p);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.substr(0, 3) == "fp:") {
    const auto digits = text.substr(3);
    std::uint32_t p = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) {
      return prime(p);
    }
  }
  throw Error(Errc::invalid_input,
              "unknown field '" + std::string(text) + "' (expected q or fp:<p>)");
}

Scalar FieldSpec::zero() const { return from_int(0); }
Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(long long value) const {
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) {
    s.value_ = mpq_class(static_cast<long>(value));
  } else {
    std::int64_t r = value % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    s.value_ = r;
  }
  return s;
}

Scalar FieldSpec::from_rational(const mpq_class& value) const {
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) {
    mpq_class v = value;
    v.canonicalize();
    s.value_ = std::move(v);
    return s;
  }
  const std::int64_t den = mpz_residue(value.get_den(), p_);
  if (den == 0) {
    throw Error(Errc::zero_element, "denominator vanishes in " + to_string());
  }
  const std::int64_t num = mpz_residue(value.get_num(), p_);
  s.value_ = (num * mod_inverse(den, p_)) % p_;
  return s;
}

std::string FieldSpec::to_string() const {
  return p_ == 0 ? std::string("q") : "fp:" + std::to_string(p_);
}

FieldSpec Scalar::field() const {
  return p_ == 0 ? FieldSpec::rationals() : FieldSpec::prime(p_);
}

bool Scalar::is_zero() const noexcept {
  if (p_ != 0) return std::get<std::int64_t>(value_) == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const noexcept {
  if (p_ != 0) return std::get<std::int64_t>(value_) == 1;
  return std::get<mpq_class>(value_) == 1;
}

void Scalar::check_same_field(const Scalar& other) const {
  if (p_ != other.p_) {
    throw Error(Errc::field_mismatch, "scalars from different fields");
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(Errc::zero_element, "inverse of zero");
  Scalar s;
  s.p_ = p_;
  if (p_ != 0) {
    s.value_ = mod_inverse(std::get<std::int64_t>(value_), p_);
  } else {
    s.value_ = mpq_class(1) / std::get<mpq_class>(value_);
  }
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_ != 0) {
    auto& r = std::get<std::int64_t>(s.value_);
    if (r != 0) r = p_ - r;
  } else {
    auto& q = std::get<mpq_class>(s.value_);
    q = -q;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (p_ != 0) {
    auto& r = std::get<std::int64_t>(value_);
    r += std::get<std::int64_t>(rhs.value_);
    if (r >= static_cast<std::int64_t>(p_)) r -= p_;
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same_field(rhs);
  if (p_ != 0) {
    auto& r = std::get<std::int64_t>(value_);
    r -= std::get<std::int64_t>(rhs.value_);
    if (r < 0) r += p_;
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (p_ != 0) {
    auto& r = std::get<std::int64_t>(value_);
    r = (r * std::get<std::int64_t>(rhs.value_)) % p_;
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  return a.value_ == b.value_;
}

mpq_class Scalar::to_rational() const {
  if (p_ == 0) return std::get<mpq_class>(value_);
  std::int64_t r = std::get<std::int64_t>(value_);
  if (r > static_cast<std::int64_t>(p_ / 2)) r -= p_;
  return mpq_class(static_cast<long>(r));
}

std::int64_t Scalar::residue() const {
  if (p_ == 0) {
    throw Error(Errc::field_mismatch, "residue of a rational scalar");
  }
  return std::get<std::int64_t>(value_);
}

std::string Scalar::to_string() const { return to_rational().get_str(); }

}  // namespace lochf::exactla
