#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lochf/locring/hilbert.hpp"
#include "lochf/locring/presentation.hpp"

namespace lochf::numsgp {

using locring::HilbertVector;

/// <a_1, ..., a_k> with gcd 1, stored with its minimal generators ascending.
struct NumericalSemigroup {
  std::vector<std::uint32_t> generators;
  /// Inputs dropped because they are generated by the others.
  std::vector<std::uint32_t> redundant;
  std::vector<std::uint32_t> gaps;
  /// -1 when the semigroup is all of N.
  std::int64_t frobenius = -1;
  std::uint32_t multiplicity = 1;
  /// apery[r] = least element congruent to r mod the multiplicity.
  std::vector<std::uint64_t> apery;

  std::size_t embedding_dimension() const noexcept { return generators.size(); }
  bool contains(std::uint64_t s) const;
};

/// Throws GcdNotOne, or InvalidInput for an empty list or a zero generator.
NumericalSemigroup semigroup_closure(std::vector<std::uint32_t> generators);

/// S_n = (n-fold sums of generators) + S, kept as the order function
/// L(s) = max{n : s in S_n} on [0, bound); gaps have no order.
struct SumsetFiltration {
  std::uint64_t bound = 0;
  std::vector<std::int32_t> order;

  bool contains(std::uint32_t n, std::uint64_t s) const {
    return s < bound && order[s] >= static_cast<std::int32_t>(n);
  }
  /// Elements of S_n \ S_{n+1}, ascending.
  std::vector<std::uint64_t> layer(std::uint32_t n) const;
};

/// bound = F + 1 + max(n_max * a_k, (n_max + 1) * a_1): every s outside the
/// range lies in S_{n_max + 1}, so each layer up to n_max is complete.
SumsetFiltration sumset_filtration(const NumericalSemigroup& s, std::uint32_t n_max);

/// H(n) = |S_n \ S_{n+1}|, exact for all n <= n_max.
HilbertVector semigroup_hf(const NumericalSemigroup& s, std::uint32_t n_max);
HilbertVector semigroup_hf(const std::vector<std::uint32_t>& generators, std::uint32_t n_max);

struct PresentationCheck {
  bool verified = false;
  std::optional<std::size_t> failing_relation;
  std::optional<std::uint32_t> mismatch_degree;
  std::string reason;
  HilbertVector semigroup_hf;
  HilbertVector local_hf;
};

/// X_i -> t^{a_i} must kill every relation, and the semigroup HF must equal
/// the local HF of the candidate for n <= n_max (requires n_max + 1 <= D).
PresentationCheck verify_presentation(const std::vector<std::uint32_t>& generators,
                                      const locring::QuotientPresentation& candidate,
                                      std::uint32_t n_max);

struct ScanConstraints {
  std::uint32_t min_embdim = 2;
  std::uint32_t max_embdim = 3;
  std::uint32_t max_multiplicity = 8;
  /// The family is infinite without this cap.
  std::uint32_t max_frobenius = 60;
  unsigned jobs = 1;
};

struct ScanItem {
  std::vector<std::uint32_t> generators;
  std::int64_t frobenius;
  /// H(0..e+1); the HF is constant from the reduction number r <= e - 1 on.
  std::vector<std::uint64_t> hf;
  std::optional<std::size_t> first_violation;
};

struct ScanReport {
  std::size_t scanned = 0;
  std::size_t embdim3_scanned = 0;
  std::size_t embdim3_violations = 0;
  /// Non-monotone semigroups in generator-tuple order.
  std::vector<ScanItem> violations;
  /// Every inspected semigroup; filled only for explicit candidate lists.
  std::vector<ScanItem> items;
  bool elias_consistent() const noexcept { return embdim3_violations == 0; }
};

/// Every minimally generated <a_1 < ... < a_k> within the constraints.
ScanReport monotonicity_scan(const ScanConstraints& constraints);
/// Per-item verdicts for the given generator lists, in input order.
ScanReport monotonicity_scan(const std::vector<std::vector<std::uint32_t>>& candidates,
                             unsigned jobs = 1);

}  // namespace lochf::numsgp
