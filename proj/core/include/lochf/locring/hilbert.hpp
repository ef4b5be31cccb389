#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lochf/locring/presentation.hpp"

namespace lochf::locring {

/// H(M,0..n_max). Entries past valid_to were computed but are not certified.
struct HilbertVector {
  std::vector<std::uint64_t> values;
  std::size_t valid_to = 0;

  friend bool operator==(const HilbertVector&, const HilbertVector&) = default;
};

struct LayerElement {
  Monomial monomial;
  std::size_t component;
};

/// k-basis of m^n M / m^{n+1} M given by standard monomials x^a e_i of
/// degree n. Throws PrecisionExceeded when n + 1 > D.
std::vector<LayerElement> layer_basis(const ModulePresentation& module, std::uint32_t n);

/// H(M,n) for n = 0..n_max; valid_to = min(n_max, D - 2).
HilbertVector hilbert_function(const ModulePresentation& module, std::uint32_t n_max);

struct MonotonicityReport {
  bool nondecreasing = true;
  std::optional<std::size_t> first_violation;
};

/// Checks H(n) <= H(n+1) for every n < valid_to.
MonotonicityReport monotonicity_report(const HilbertVector& h);

}  // namespace lochf::locring
