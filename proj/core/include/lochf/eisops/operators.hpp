#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lochf/exactla/matrix.hpp"
#include "lochf/grmod/graded.hpp"
#include "lochf/homalg/resolution.hpp"

namespace lochf::eisops {

using exactla::ExactMatrix;
using exactla::FieldSpec;
using exactla::Scalar;
using homalg::FreeComplex;
using locring::ModulePresentation;
using locring::PolyMatrix;
using locring::Polynomial;
using locring::QuotientPresentation;

/// The complex read over Q: every entry replaced by its normal form modulo
/// (f) + n^P, where P is the precision of that differential.
struct LiftedComplex {
  std::shared_ptr<const QuotientPresentation> base;
  std::vector<PolyMatrix> differentials;
  std::vector<std::uint32_t> precision;

  std::size_t length() const noexcept { return differentials.size(); }
  std::size_t rank(std::size_t i) const;
  const PolyMatrix& d(std::size_t i) const { return differentials.at(i - 1); }
  std::uint32_t precision_of(std::size_t i) const { return precision.at(i - 1); }
};

LiftedComplex lift_complex(const FreeComplex& f);

/// First i where d~_i does not reduce to d_i modulo (f) + n^P.
std::optional<std::size_t> reduction_mismatch(const LiftedComplex& lifted, const FreeComplex& f);

/// Maps t~_j: F~_i -> F~_{i-2} for i = 2..length with
/// sum_j f_j t~_j = d~_{i-1} d~_i modulo n^bound(i).
struct OperatorFamily {
  std::vector<Polynomial> sequence;
  /// ops[i - 2][j] is t~_{j+1} on F~_i.
  std::vector<std::vector<PolyMatrix>> ops;
  std::vector<std::uint32_t> bounds;

  std::size_t count() const noexcept { return sequence.size(); }
  /// Highest source index, or 1 when there are no operators.
  std::size_t top() const noexcept { return ops.size() + 1; }
  const PolyMatrix& t(std::size_t j, std::size_t i) const { return ops.at(i - 2).at(j); }
  std::uint32_t bound(std::size_t i) const { return bounds.at(i - 2); }
};

/// Operators for the relations of the base ring.
OperatorFamily solve_operators(const LiftedComplex& lifted);
/// Operators for another sequence generating the same ideal. Each entry is
/// the solution whose coefficient vector is reduced against all solutions of
/// the homogeneous system, higher-degree unknowns eliminated first. The
/// family stops before the first index whose bound is at most max ord f_j.
/// Throws NotInIdeal naming the entry when an entry of d~^2 is outside (f).
OperatorFamily solve_operators(const LiftedComplex& lifted, const std::vector<Polynomial>& f);

struct IdentityCheck {
  /// First index where sum f_j t~_j differs from d~_{i-1} d~_i modulo n^bound.
  std::optional<std::size_t> failure;
  /// Both sides agree as polynomials with no truncation at all.
  bool exact = false;
};
IdentityCheck check_identity(const LiftedComplex& lifted, const OperatorFamily& t);

/// c x c matrix over Q whose constant part is invertible.
class CoefficientMatrix {
 public:
  /// Throws NotInvertible when det(alpha(0)) vanishes.
  explicit CoefficientMatrix(PolyMatrix alpha);
  static CoefficientMatrix constant(const ExactMatrix& alpha, std::size_t nvars);

  const PolyMatrix& matrix() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return alpha_.rows(); }
  ExactMatrix constant_part() const;
  /// det(alpha(0)), nonzero.
  const Scalar& determinant() const noexcept { return det_; }
  bool is_constant() const;

 private:
  PolyMatrix alpha_;
  Scalar det_;
};

/// [g] = alpha^{-1} [f], exact when alpha is constant and modulo n^d
/// otherwise.
std::vector<Polynomial> transform_generators(const CoefficientMatrix& alpha,
                                             const std::vector<Polynomial>& f, std::uint32_t d);

/// [t'] = alpha^tr [t], as operators for g = alpha^{-1} f. The identity
/// sum g_j t~'_j = d~^2 is re-checked and a failure throws NotInIdeal.
OperatorFamily base_change_operators(const LiftedComplex& lifted, const CoefficientMatrix& alpha,
                                     const OperatorFamily& t);

/// Ext^i(M, k) = k^{beta_i} with the operators acting as k-linear maps.
struct ExtModule {
  FieldSpec field;
  std::vector<std::size_t> dims;
  /// action[j][i]: T_{j+1}: Ext^i -> Ext^{i+2}, a dims[i+2] x dims[i] matrix.
  std::vector<std::vector<ExactMatrix>> action;

  std::size_t operator_count() const noexcept { return action.size(); }
  std::size_t top() const noexcept { return dims.empty() ? 0 : dims.size() - 1; }
  const ExactMatrix& T(std::size_t j, std::size_t i) const { return action.at(j).at(i); }
};

/// Covers the degrees reached by the operators. Throws NotMinimal when some
/// differential has a unit entry.
ExtModule ext_action(const FreeComplex& f, const OperatorFamily& t);

struct CommutationFailure {
  std::size_t a;
  std::size_t b;
  std::size_t degree;
};
/// First pair and degree with T_a T_b != T_b T_a on Ext^degree.
std::optional<CommutationFailure> first_noncommuting(const ExtModule& e);

/// Window evidence for finite generation over k[t_1..t_c].
struct FiniteGenerationReport {
  std::size_t window = 0;
  /// new_generators[i] = dim Ext^i - dim sum_j T_j(Ext^{i-2})
  std::vector<std::size_t> new_generators;
  std::optional<std::size_t> last_new_degree;
  /// No new generators in at least two consecutive degrees at the end.
  bool stable = false;
};

FiniteGenerationReport finite_generation_window(const ExtModule& e, std::size_t window);

struct ParameterElement {
  std::vector<Scalar> coefficients;
  /// xi: Ext^i -> Ext^{i+2} was checked bijective for i in [from, to].
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t attempts = 0;
};

/// First degree of the bijectivity check for a window ending at `window`.
std::size_t parameter_window_start(std::size_t window);

/// Sweeps coefficient tuples with every entry nonzero, lexicographically:
/// 1..p-1 over F_p, 1..9 over the rationals. Throws NotDimensionOne when the
/// dimensions in the checked range vanish or are not 2-periodic,
/// SearchExhausted after max_attempts tuples.
ParameterElement parameter_search(const ExtModule& e, std::size_t window,
                                  std::size_t max_attempts = 100000);

struct StrictReductionReport {
  /// (i) alpha [g] = [f] exactly.
  bool round_trip = false;
  /// (ii) g_2*..g_c* is a regular sequence in the associated graded ring.
  grmod::RegularSequenceResult tail_regular;
  bool initial_forms_match = false;
  /// (iii) Betti numbers of M over P at D and D + 2.
  homalg::BettiTable betti_over_p;
  bool pd_at_most_one = false;
  /// (iv)
  int dim_p = 0;
  bool dim_p_at_least_two = false;
  bool holds() const;
};

struct StrictReduction {
  /// Relations of A reordered by ord, descending.
  std::vector<Polynomial> sorted;
  std::vector<std::size_t> order;
  ExtModule ext;
  ParameterElement xi;
  ExactMatrix beta{FieldSpec::rationals(), 0, 0};
  std::vector<Polynomial> g;
  std::vector<Polynomial> g_star;
  std::shared_ptr<const QuotientPresentation> p;
  StrictReductionReport report;
};

struct StrictOptions {
  std::uint32_t truncation = 12;
  std::size_t window = 6;
};

/// Reduces A = Q/(f) with strict f and M of complexity one to the
/// hypersurface A = P/(g_1), P = Q/(g_2..g_c). Throws NotStrict when
/// f_1*..f_c* is not certified regular, NotDimensionOne when the Betti
/// evidence shows complexity above one.
StrictReduction strict_reduction(const ModulePresentation& m, const StrictOptions& options = {});

}  // namespace lochf::eisops
