#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lochf/locring/presentation.hpp"

namespace lochf::homalg {

using locring::ModulePresentation;
using locring::PolyMatrix;
using locring::Polynomial;
using locring::QuotientPresentation;

/// A pair (phi, psi) of square polynomial matrices with phi*psi = psi*phi = f*I.
struct MatrixFactorization {
  locring::RingSpec ring;
  Polynomial f;
  PolyMatrix phi;
  PolyMatrix psi;
};

/// Checks both products exactly; throws NotAFactorization naming the first
/// offending entry, InvalidInput on shape problems.
void mf_verify(const MatrixFactorization& mf);

/// ... -> F_2 -> F_1 -> F_0 over A; differentials[i - 1] is d_i: F_i -> F_{i-1}
/// (rows = rank F_{i-1}, columns = rank F_i).
struct FreeComplex {
  std::shared_ptr<const QuotientPresentation> over;
  std::vector<PolyMatrix> differentials;
  /// precision[i - 1]: d_i is known modulo n^precision[i - 1]. Empty means
  /// every differential is exact up to the ring's truncation order.
  std::vector<std::uint32_t> precision;

  std::uint32_t precision_of(std::size_t i) const;
  std::size_t length() const noexcept { return differentials.size(); }
  std::size_t rank(std::size_t i) const;
  const PolyMatrix& d(std::size_t i) const { return differentials.at(i - 1); }
  /// Every entry of every differential lies in the maximal ideal.
  bool is_minimal() const;
  /// First i with d_i * d_{i+1} not in (f) modulo n^{precision_of(i)}.
  std::optional<std::size_t> first_nonvanishing_composite() const;
};

/// The 2-periodic complex phi, psi, phi, ... of length n over Q/(f).
FreeComplex mf_resolution(const MatrixFactorization& mf, std::size_t n);

/// Minimal resolution computed inside F / n^P F. Precision drops by the
/// least order of the current differential at every step.
struct ResolutionRun {
  std::vector<PolyMatrix> differentials;
  std::vector<std::size_t> betti;
  /// precision[i]: entries of d_{i+1} are known modulo n^precision[i].
  std::vector<std::uint32_t> precision;
  /// True when the run stopped because precision ran out rather than at n
  /// or at a zero module.
  bool exhausted = false;
};

ResolutionRun minimal_resolution(const ModulePresentation& m, std::size_t n, std::uint32_t d);

/// Minimal presentation of Syz_1(M): its columns generate ker(F_0 -> M)'s
/// relations, i.e. coker of the result is the first syzygy module. Runs at D
/// and D + 2 and throws PrecisionUnstable when the shapes disagree.
PolyMatrix syzygy_step(const ModulePresentation& m, std::uint32_t d);

/// The minimal resolution as a complex (d_1 is a minimal presentation of M).
FreeComplex resolution_complex(const ModulePresentation& m, std::size_t n, std::uint32_t d);

struct BettiTable {
  std::vector<std::size_t> betti;
  /// beta_0..beta_{certified_to} agree between the D and D + 2 runs.
  std::size_t certified_to = 0;
  std::uint32_t truncation = 0;
};

/// beta_0..beta_n as far as precision allows. Throws PrecisionUnstable when
/// the two truncations disagree already on beta_0.
BettiTable betti_table(const ModulePresentation& m, std::size_t n, std::uint32_t d);

struct ComplexityEstimate {
  int cx_upper_evidence = 0;
  bool bounded = false;
  std::size_t window = 0;
};

/// Window evidence only. Needs certified_to + 1 >= 6, else WindowTooShort.
ComplexityEstimate complexity_estimate(const BettiTable& b);

/// depth A - depth M + cx.
int vpd_formula(int depth_a, int depth_m, int cx);

}  // namespace lochf::homalg
