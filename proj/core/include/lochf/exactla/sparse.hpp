#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lochf/exactla/field.hpp"

namespace lochf::exactla {

using Index = std::uint32_t;

struct SparseEntry {
  Index index;
  Scalar value;
};

/// Sparse vector with strictly increasing indices and no stored zeros.
class SparseVector {
 public:
  SparseVector() = default;

  /// Sorts, merges duplicate indices and drops zeros.
  static SparseVector from_entries(std::vector<SparseEntry> entries);
  static SparseVector unit(Index index, const Scalar& value);

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const SparseEntry> entries() const noexcept { return entries_; }
  const SparseEntry& front() const { return entries_.front(); }

  /// Coefficient at `index`, or nullptr when it is zero.
  const Scalar* find(Index index) const;

  void scale(const Scalar& factor);
  /// *this += factor * other
  void add_scaled(const Scalar& factor, const SparseVector& other);

  friend bool operator==(const SparseVector& a, const SparseVector& b);

 private:
  std::vector<SparseEntry> entries_;
};

/// Incrementally built row-echelon basis of a subspace of k^columns.
///
/// Pivots are the first nonzero index of each stored row, so callers control
/// the elimination order through their choice of coordinate numbering. When
/// tracking is enabled every stored row remembers how it was assembled from
/// the tagged vectors inserted so far, which yields kernel vectors (relations
/// among the tags) and explicit membership witnesses.
class EchelonForm {
 public:
  EchelonForm(FieldSpec field, Index columns, bool track_combinations = false);

  FieldSpec field() const noexcept { return field_; }
  Index columns() const noexcept { return columns_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool is_pivot(Index column) const { return pivot_row_[column] >= 0; }

  /// Inserts `v` tagged with `tag`. Returns the relation among tags when `v`
  /// turns out to depend on earlier rows (only meaningful when tracking; the
  /// relation is empty otherwise), or nullopt when `v` enlarged the span.
  std::optional<SparseVector> insert(SparseVector v,
                                     std::optional<Index> tag = std::nullopt);

  /// Normal form: the unique vector in v + span with zeros at every pivot.
  SparseVector reduce(SparseVector v) const;

  struct Expression {
    SparseVector residue;
    /// v = residue + sum_t combination[t] * (vector inserted with tag t)
    SparseVector combination;
  };
  Expression express(SparseVector v) const;

  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  std::vector<Index> pivot_columns() const;
  const SparseVector& row(std::size_t i) const { return rows_[i].vector; }
  const SparseVector& row_combination(std::size_t i) const {
    return rows_[i].combination;
  }
  /// Stored row whose pivot is `column`; requires is_pivot(column).
  std::size_t row_for_pivot(Index column) const {
    return static_cast<std::size_t>(pivot_row_[column]);
  }

 private:
  struct Row {
    SparseVector vector;
    SparseVector combination;
  };

  FieldSpec field_;
  Index columns_;
  bool track_;
  std::vector<Row> rows_;
  std::vector<std::int32_t> pivot_row_;
};

}  // namespace lochf::exactla
