#include "lochf/locring/ring.hpp"

#include <set>

#include "lochf/error.hpp"
#include "lochf/locring/expression.hpp"

namespace lochf::locring {

void RingSpec::validate() const {
  if (truncation < 2) {
    throw Error(Errc::invalid_input, "truncation order must be at least 2");
  }
  if (variables.empty()) throw Error(Errc::invalid_input, "ring has no variables");
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (v.empty() || !seen.insert(v).second) {
      throw Error(Errc::invalid_input, "variable names must be distinct and nonempty");
    }
  }
}

RingSpec RingSpec::with_truncation(std::uint32_t d) const {
  RingSpec r = *this;
  r.truncation = d;
  return r;
}

Polynomial RingSpec::parse(std::string_view text) const {
  return parse_polynomial(text, variables, field);
}

MonomialTable::MonomialTable(std::size_t nvars, std::uint32_t bound)
    : nvars_(nvars), bound_(bound) {
  offsets_.reserve(bound + 2);
  for (std::uint32_t d = 0; d < bound; ++d) {
    offsets_.push_back(monomials_.size());
    for (auto& m : monomials_of_degree(nvars, d)) monomials_.push_back(std::move(m));
  }
  offsets_.push_back(monomials_.size());
  offsets_.push_back(monomials_.size());
  index_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(key(monomials_[i]), i);
}

std::uint64_t MonomialTable::key(const Monomial& m) const {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < m.nvars(); ++i) k = k * (bound_ + 1) + m[i];
  return k;
}

std::size_t MonomialTable::index_of(const Monomial& m) const {
  if (m.degree() >= bound_) {
    throw Error(Errc::precision_exceeded, "monomial beyond the truncation order");
  }
  return index_.at(key(m));
}

ModuleCoordinates::ModuleCoordinates(std::shared_ptr<const MonomialTable> table,
                                     std::size_t rank)
    : table_(std::move(table)), rank_(rank) {
  degree_of_monomial_.reserve(table_->size());
  for (std::size_t i = 0; i < table_->size(); ++i) {
    degree_of_monomial_.push_back((*table_)[i].degree());
  }
}

exactla::Index ModuleCoordinates::index(std::size_t monomial_index,
                                        std::size_t component) const {
  const std::uint32_t d = degree_of_monomial_[monomial_index];
  const std::size_t off = table_->offset(d);
  const std::size_t local = monomial_index - off;
  return static_cast<exactla::Index>(off * rank_ + component * table_->count(d) + local);
}

ModuleCoordinates::Position ModuleCoordinates::position(exactla::Index column) const {
  const std::uint32_t d = degree_of(column);
  const std::size_t off = table_->offset(d);
  const std::size_t within = column - off * rank_;
  const std::size_t count = table_->count(d);
  return {off + within % count, within / count};
}

std::uint32_t ModuleCoordinates::degree_of(exactla::Index column) const {
  // Columns of degree d occupy [offset(d)*r, offset(d+1)*r).
  std::uint32_t lo = 0, hi = table_->bound();
  while (hi - lo > 1) {
    const std::uint32_t mid = (lo + hi) / 2;
    if (table_->offset(mid) * rank_ <= column) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

exactla::SparseVector ModuleCoordinates::to_sparse(
    const std::vector<Polynomial>& element) const {
  std::vector<exactla::SparseEntry> entries;
  for (std::size_t c = 0; c < element.size(); ++c) {
    for (const auto& [m, v] : element[c].terms()) {
      if (m.degree() >= bound()) break;
      entries.push_back({index(m, c), v});
    }
  }
  return exactla::SparseVector::from_entries(std::move(entries));
}

exactla::SparseVector ModuleCoordinates::shifted(const std::vector<Polynomial>& element,
                                                 const Monomial& shift) const {
  std::vector<exactla::SparseEntry> entries;
  for (std::size_t c = 0; c < element.size(); ++c) {
    for (const auto& [m, v] : element[c].terms()) {
      if (m.degree() + shift.degree() >= bound()) break;
      entries.push_back({index(m * shift, c), v});
    }
  }
  return exactla::SparseVector::from_entries(std::move(entries));
}

std::vector<Polynomial> ModuleCoordinates::from_sparse(const exactla::SparseVector& v,
                                                       FieldSpec field) const {
  std::vector<Polynomial> out(rank_, Polynomial(field, table_->nvars()));
  for (const auto& e : v.entries()) {
    const Position p = position(e.index);
    out[p.component].add_term((*table_)[p.monomial], e.value);
  }
  return out;
}

TruncatedSeries::TruncatedSeries(std::shared_ptr<const RingSpec> ring,
                                 const Polynomial& value)
    : ring_(std::move(ring)), value_(value.truncated(ring_->truncation)) {}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  return TruncatedSeries(a.ring_, a.value_ + b.value_);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return TruncatedSeries(a.ring_, a.value_ - b.value_);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return TruncatedSeries(
      a.ring_, Polynomial::truncated_product(a.value_, b.value_, a.ring_->truncation));
}

}  // namespace lochf::locring
