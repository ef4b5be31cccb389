#include "lochf/locring/hilbert.hpp"

#include <algorithm>

#include "lochf/error.hpp"
#include "lochf/locring/span.hpp"

namespace lochf::locring {
namespace {

void require_precision(std::uint32_t n, std::uint32_t d) {
  if (n + 1 > d) {
    throw Error(Errc::precision_exceeded,
                "layer " + std::to_string(n) + " needs truncation order > " +
                    std::to_string(n) + ", have D = " + std::to_string(d));
  }
}

struct RelationSpan {
  ModuleCoordinates coords;
  exactla::EchelonForm echelon;
};

// The truncation may be cut down to n_max + 1: layers up to n_max only see
// F / n^{n_max+1} F.
RelationSpan relation_span(const ModulePresentation& module, std::uint32_t bound) {
  ModuleCoordinates coords(shared_table(module.over().nvars(), bound), module.rank());
  const auto gens = module.relation_generators();
  auto echelon = submodule_span(coords, gens, module.over().field());
  return {std::move(coords), std::move(echelon)};
}

}  // namespace

std::vector<LayerElement> layer_basis(const ModulePresentation& module, std::uint32_t n) {
  require_precision(n, module.over().truncation());
  const auto span = relation_span(module, n + 1);
  std::vector<LayerElement> basis;
  const auto first = span.coords.first_of_degree(n);
  const auto last = span.coords.first_of_degree(n + 1);
  for (auto col = first; col < last; ++col) {
    if (span.echelon.is_pivot(col)) continue;
    const auto p = span.coords.position(col);
    basis.push_back({span.coords.table()[p.monomial], p.component});
  }
  return basis;
}

HilbertVector hilbert_function(const ModulePresentation& module, std::uint32_t n_max) {
  const std::uint32_t d = module.over().truncation();
  require_precision(n_max, d);
  const auto span = relation_span(module, n_max + 1);
  std::vector<std::uint64_t> pivots(n_max + 1, 0);
  for (const auto col : span.echelon.pivot_columns()) {
    ++pivots[span.coords.degree_of(col)];
  }
  HilbertVector h;
  h.values.reserve(n_max + 1);
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    h.values.push_back(span.coords.table().count(n) * module.rank() - pivots[n]);
  }
  h.valid_to = std::min<std::size_t>(n_max, d - 2);
  return h;
}

MonotonicityReport monotonicity_report(const HilbertVector& h) {
  MonotonicityReport r;
  const std::size_t last = std::min(h.valid_to, h.values.empty() ? 0 : h.values.size() - 1);
  for (std::size_t n = 0; n < last; ++n) {
    if (h.values[n] > h.values[n + 1]) {
      r.nondecreasing = false;
      r.first_violation = n;
      break;
    }
  }
  return r;
}

}  // namespace lochf::locring
