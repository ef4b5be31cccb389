#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lochf/exactla/sparse.hpp"
#include "lochf/locring/polynomial.hpp"

namespace lochf::locring {

/// Q = k[[x_1..x_m]] computed modulo n^D.
struct RingSpec {
  std::vector<std::string> variables;
  std::uint32_t truncation = 12;
  FieldSpec field;

  /// Checks D >= 2 and distinct, nonempty variable names.
  void validate() const;
  std::size_t nvars() const noexcept { return variables.size(); }
  RingSpec with_truncation(std::uint32_t d) const;
  Polynomial parse(std::string_view text) const;
};

/// Enumerates the monomials of degree < D: degree ascending, and within each
/// degree lexicographically largest first. This numbering is the column
/// order of every echelon form built over a truncated ring.
class MonomialTable {
 public:
  MonomialTable(std::size_t nvars, std::uint32_t bound);

  std::size_t nvars() const noexcept { return nvars_; }
  std::uint32_t bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  /// Index of the first monomial of degree d (d <= bound).
  std::size_t offset(std::uint32_t d) const { return offsets_[d]; }
  std::size_t count(std::uint32_t d) const { return offsets_[d + 1] - offsets_[d]; }
  std::size_t index_of(const Monomial& m) const;

 private:
  std::uint64_t key(const Monomial& m) const;

  std::size_t nvars_;
  std::uint32_t bound_;
  std::vector<Monomial> monomials_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Coordinates of the free module Q^r / n^D Q^r. Column order is degree
/// first, then component, then monomial, so pivots of an echelon form are
/// the initial terms of the subspace with respect to the n-adic filtration.
class ModuleCoordinates {
 public:
  ModuleCoordinates(std::shared_ptr<const MonomialTable> table, std::size_t rank);

  const MonomialTable& table() const noexcept { return *table_; }
  std::size_t rank() const noexcept { return rank_; }
  std::uint32_t bound() const noexcept { return table_->bound(); }
  exactla::Index dimension() const noexcept {
    return static_cast<exactla::Index>(table_->size() * rank_);
  }

  exactla::Index index(std::size_t monomial_index, std::size_t component) const;
  exactla::Index index(const Monomial& m, std::size_t component) const {
    return index(table_->index_of(m), component);
  }
  struct Position {
    std::size_t monomial;
    std::size_t component;
  };
  Position position(exactla::Index column) const;
  std::uint32_t degree_of(exactla::Index column) const;
  /// First column of degree d (d may equal bound()).
  exactla::Index first_of_degree(std::uint32_t d) const {
    return static_cast<exactla::Index>(table_->offset(d) * rank_);
  }

  /// Truncates below the bound and converts.
  exactla::SparseVector to_sparse(const std::vector<Polynomial>& element) const;
  /// m * element, truncated.
  exactla::SparseVector shifted(const std::vector<Polynomial>& element,
                                const Monomial& m) const;
  std::vector<Polynomial> from_sparse(const exactla::SparseVector& v,
                                      FieldSpec field) const;

 private:
  std::shared_ptr<const MonomialTable> table_;
  std::size_t rank_;
  std::vector<std::uint32_t> degree_of_monomial_;
};

/// An element of Q known modulo n^D.
class TruncatedSeries {
 public:
  TruncatedSeries(std::shared_ptr<const RingSpec> ring, const Polynomial& value);

  const RingSpec& ring() const noexcept { return *ring_; }
  const Polynomial& value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_.is_zero(); }
  /// nullopt stands for an infinite order (zero within the truncation).
  std::optional<std::uint32_t> ord() const { return value_.ord(); }
  Polynomial initial_form() const { return value_.initial_form(); }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  std::string to_string() const { return value_.to_string(ring_->variables); }

 private:
  std::shared_ptr<const RingSpec> ring_;
  Polynomial value_;
};

}  // namespace lochf::locring
