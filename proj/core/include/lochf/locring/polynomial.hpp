#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lochf/exactla/field.hpp"
#include "lochf/locring/monomial.hpp"

namespace lochf::locring {

using exactla::FieldSpec;
using exactla::Scalar;

/// Exact polynomial in k[x_1..x_m]; terms are kept in ascending deglex order
/// and never store zero coefficients.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar, DegLexLess>;

  Polynomial(FieldSpec field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static Polynomial constant(FieldSpec field, std::size_t nvars, const Scalar& c);
  static Polynomial monomial(FieldSpec field, const Monomial& m, const Scalar& c);
  static Polynomial variable(FieldSpec field, std::size_t nvars, std::size_t i);

  FieldSpec field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Scalar& c);

  /// Lowest degree with a nonzero coefficient; nullopt for zero.
  std::optional<std::uint32_t> ord() const;
  /// Highest degree present; nullopt for zero.
  std::optional<std::uint32_t> max_degree() const;
  /// Lowest-degree homogeneous component. Throws ZeroElement for zero.
  Polynomial initial_form() const;
  Polynomial homogeneous_component(std::uint32_t degree) const;
  bool is_homogeneous() const;
  /// Drops every term of degree >= bound.
  Polynomial truncated(std::uint32_t bound) const;
  /// Constant coefficient (the image in the residue field).
  Scalar constant_term() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Scalar& c, Polynomial a);
  /// Product with every term of degree >= bound discarded.
  static Polynomial truncated_product(const Polynomial& a, const Polynomial& b,
                                      std::uint32_t bound);
  Polynomial times_monomial(const Monomial& m) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Highest-degree terms first, e.g. "Y^3 - X*Z".
  std::string to_string(std::span<const std::string> names) const;

 private:
  FieldSpec field_;
  std::size_t nvars_;
  Terms terms_;
};

/// Dense matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix(FieldSpec field, std::size_t nvars, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(FieldSpec field, std::size_t nvars, std::size_t n);

  FieldSpec field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<Polynomial> column(std::size_t j) const;
  PolyMatrix transpose() const;
  bool is_zero() const;
  /// True when every entry lies in the maximal ideal.
  bool entries_in_maximal_ideal() const;
  PolyMatrix truncated(std::uint32_t bound) const;
  /// Smallest ord over the nonzero entries; nullopt for the zero matrix.
  std::optional<std::uint32_t> min_entry_ord() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Polynomial& c, const PolyMatrix& a);
  static PolyMatrix truncated_product(const PolyMatrix& a, const PolyMatrix& b,
                                      std::uint32_t bound);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  std::vector<std::vector<std::string>> to_strings(
      std::span<const std::string> names) const;

 private:
  FieldSpec field_;
  std::size_t nvars_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> data_;
};

}  // namespace lochf::locring
