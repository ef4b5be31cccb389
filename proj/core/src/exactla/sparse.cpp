#include "lochf/exactla/sparse.hpp"

#include <algorithm>

#include "lochf/error.hpp"

namespace lochf::exactla {

SparseVector SparseVector::from_entries(std::vector<SparseEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SparseEntry& a, const SparseEntry& b) {
                     return a.index < b.index;
                   });
  SparseVector out;
  out.entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.entries_.empty() && out.entries_.back().index == e.index) {
      out.entries_.back().value += e.value;
      if (out.entries_.back().value.is_zero()) out.entries_.pop_back();
    } else if (!e.value.is_zero()) {
      out.entries_.push_back(std::move(e));
    }
  }
  return out;
}

SparseVector SparseVector::unit(Index index, const Scalar& value) {
  SparseVector out;
  if (!value.is_zero()) out.entries_.push_back({index, value});
  return out;
}

const Scalar* SparseVector::find(Index index) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const SparseEntry& e, Index i) { return e.index < i; });
  if (it == entries_.end() || it->index != index) return nullptr;
  return &it->value;
}

void SparseVector::scale(const Scalar& factor) {
  if (factor.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.value *= factor;
}

void SparseVector::add_scaled(const Scalar& factor, const SparseVector& other) {
  if (factor.is_zero() || other.empty()) return;
  std::vector<SparseEntry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() ||
        (a != entries_.end() && a->index < b->index)) {
      merged.push_back(std::move(*a));
      ++a;
    } else if (a == entries_.end() || b->index < a->index) {
      merged.push_back({b->index, factor * b->value});
      ++b;
    } else {
      Scalar v = std::move(a->value);
      v += factor * b->value;
      if (!v.is_zero()) merged.push_back({a->index, std::move(v)});
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

bool operator==(const SparseVector& a, const SparseVector& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].index != b.entries_[i].index ||
        !(a.entries_[i].value == b.entries_[i].value)) {
      return false;
    }
  }
  return true;
}

EchelonForm::EchelonForm(FieldSpec field, Index columns, bool track_combinations)
    : field_(field),
      columns_(columns),
      track_(track_combinations),
      pivot_row_(columns, -1) {}

std::optional<SparseVector> EchelonForm::insert(SparseVector v,
                                                std::optional<Index> tag) {
  SparseVector combination;
  if (track_ && tag) combination = SparseVector::unit(*tag, field_.one());
  while (!v.empty()) {
    const Index lead = v.front().index;
    if (lead >= columns_) {
      throw Error(Errc::invalid_input, "echelon column out of range");
    }
    const std::int32_t r = pivot_row_[lead];
    if (r < 0) break;
    const Scalar factor = -v.front().value;
    v.add_scaled(factor, rows_[r].vector);
    if (track_) combination.add_scaled(factor, rows_[r].combination);
  }
  if (v.empty()) return combination;
  const Scalar inv = v.front().value.inverse();
  v.scale(inv);
  if (track_) combination.scale(inv);
  pivot_row_[v.front().index] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back({std::move(v), std::move(combination)});
  return std::nullopt;
}

EchelonForm::Expression EchelonForm::express(SparseVector v) const {
  Expression out;
  std::size_t k = 0;
  while (k < v.size()) {
    const SparseEntry& e = v.entries()[k];
    const std::int32_t r = e.index < columns_ ? pivot_row_[e.index] : -1;
    if (r < 0) {
      ++k;
      continue;
    }
    const Scalar factor = e.value;
    v.add_scaled(-factor, rows_[r].vector);
    if (track_) out.combination.add_scaled(factor, rows_[r].combination);
  }
  out.residue = std::move(v);
  return out;
}

SparseVector EchelonForm::reduce(SparseVector v) const {
  std::size_t k = 0;
  while (k < v.size()) {
    const SparseEntry& e = v.entries()[k];
    const std::int32_t r = e.index < columns_ ? pivot_row_[e.index] : -1;
    if (r < 0) {
      ++k;
      continue;
    }
    const Scalar factor = -e.value;
    v.add_scaled(factor, rows_[r].vector);
  }
  return v;
}

std::vector<Index> EchelonForm::pivot_columns() const {
  std::vector<Index> out;
  out.reserve(rows_.size());
  for (Index c = 0; c < columns_; ++c) {
    if (pivot_row_[c] >= 0) out.push_back(c);
  }
  return out;
}

}  // namespace lochf::exactla
