#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lochf/exactla/sparse.hpp"
#include "lochf/locring/ring.hpp"

namespace lochf::locring {

/// Echelon basis of (N + n^D F) / n^D F inside F = Q^r, where N is the
/// submodule generated by `generators`. Each generator is multiplied by every
/// monomial that keeps some term below the truncation.
///
/// With tracking on, the vector m * g_i carries the tag
/// i * table.size() + index_of(m), see decode_tag().
exactla::EchelonForm submodule_span(const ModuleCoordinates& coords,
                                    std::span<const std::vector<Polynomial>> generators,
                                    FieldSpec field, bool track = false);

struct SpanTag {
  std::size_t generator;
  std::size_t monomial;
};
SpanTag decode_tag(const ModuleCoordinates& coords, exactla::Index tag);

/// Smallest ord among the components of a module element; nullopt for zero.
std::optional<std::uint32_t> element_ord(const std::vector<Polynomial>& element);

/// Groups a tag combination from a tracked submodule_span into coefficient
/// polynomials q_i with sum_i q_i * g_i.
std::vector<Polynomial> combination_coefficients(const ModuleCoordinates& coords,
                                                 const exactla::SparseVector& combination,
                                                 std::size_t generator_count,
                                                 FieldSpec field);

std::shared_ptr<const MonomialTable> shared_table(std::size_t nvars, std::uint32_t bound);

}  // namespace lochf::locring
