#include "lochf/locring/span.hpp"

namespace lochf::locring {

std::optional<std::uint32_t> element_ord(const std::vector<Polynomial>& element) {
  std::optional<std::uint32_t> best;
  for (const auto& p : element) {
    const auto o = p.ord();
    if (o && (!best || *o < *best)) best = o;
  }
  return best;
}

exactla::EchelonForm submodule_span(const ModuleCoordinates& coords,
                                    std::span<const std::vector<Polynomial>> generators,
                                    FieldSpec field, bool track) {
  exactla::EchelonForm echelon(field, coords.dimension(), track);
  const MonomialTable& table = coords.table();
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto o = element_ord(generators[g]);
    if (!o || *o >= coords.bound()) continue;
    const std::size_t limit = table.offset(coords.bound() - *o);
    for (std::size_t mi = 0; mi < limit; ++mi) {
      auto v = coords.shifted(generators[g], table[mi]);
      if (v.empty()) continue;
      echelon.insert(std::move(v),
                     static_cast<exactla::Index>(g * table.size() + mi));
    }
  }
  return echelon;
}

SpanTag decode_tag(const ModuleCoordinates& coords, exactla::Index tag) {
  const std::size_t n = coords.table().size();
  return {tag / n, tag % n};
}

std::vector<Polynomial> combination_coefficients(const ModuleCoordinates& coords,
                                                 const exactla::SparseVector& combination,
                                                 std::size_t generator_count,
                                                 FieldSpec field) {
  std::vector<Polynomial> out(generator_count, Polynomial(field, coords.table().nvars()));
  for (const auto& e : combination.entries()) {
    const SpanTag t = decode_tag(coords, e.index);
    out.at(t.generator).add_term(coords.table()[t.monomial], e.value);
  }
  return out;
}

std::shared_ptr<const MonomialTable> shared_table(std::size_t nvars, std::uint32_t bound) {
  return std::make_shared<const MonomialTable>(nvars, bound);
}

}  // namespace lochf::locring
