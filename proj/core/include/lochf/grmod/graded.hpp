#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lochf/exactla/sparse.hpp"
#include "lochf/locring/hilbert.hpp"
#include "lochf/locring/presentation.hpp"

namespace lochf::grmod {

using exactla::FieldSpec;
using locring::HilbertVector;
using locring::Monomial;
using locring::Polynomial;

/// k[X_1..X_m]/(h_1..h_t) with homogeneous h_i of positive degree.
class GradedQuotient {
 public:
  GradedQuotient(std::vector<std::string> variables, FieldSpec field,
                 std::vector<Polynomial> generators, std::uint32_t degree_bound = 16);
  static GradedQuotient parse(std::vector<std::string> variables, FieldSpec field,
                              const std::vector<std::string>& generators,
                              std::uint32_t degree_bound = 16);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t nvars() const noexcept { return variables_.size(); }
  FieldSpec field() const noexcept { return field_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  /// Default window for callers that do not pick one.
  std::uint32_t degree_bound() const noexcept { return degree_bound_; }
  bool is_monomial() const;

  GradedQuotient with_generators(std::vector<Polynomial> extra) const;

 private:
  std::vector<std::string> variables_;
  FieldSpec field_;
  std::vector<Polynomial> generators_;
  std::uint32_t degree_bound_;
};

/// Degree-d piece I_d of the ideal, spanned by the products u*h_i with
/// monomials u of degree d - deg h_i. Columns are the degree-d monomials,
/// lexicographically largest first. With tracking, the product u*h_i has
/// tag i * count(d) + (position of u among the monomials of its degree).
struct DegreePiece {
  std::uint32_t degree;
  std::shared_ptr<const locring::MonomialTable> table;
  exactla::EchelonForm ideal;

  std::size_t size() const { return table->count(degree); }
  const Monomial& monomial(std::size_t column) const {
    return (*table)[table->offset(degree) + column];
  }
  /// Requires a homogeneous polynomial of this degree (or zero).
  exactla::SparseVector coordinates(const Polynomial& homogeneous) const;
  Polynomial polynomial(const exactla::SparseVector& v, FieldSpec field) const;
  /// Columns outside the pivots: their monomials form a basis of G_d.
  std::vector<std::size_t> standard_columns() const;
};

/// `table` must reach degree d, i.e. table->bound() > d.
DegreePiece degree_piece(const GradedQuotient& g, std::uint32_t d,
                         std::shared_ptr<const locring::MonomialTable> table,
                         bool track = false);

/// dim_k G_n for n = 0..n_max, exact in every degree (valid_to = n_max).
HilbertVector graded_hf(const GradedQuotient& g, std::uint32_t n_max);

/// An exhibited element sum_j q_j f_j of the ideal of A whose initial form is
/// a generator of the candidate.
struct InitialFormWitness {
  std::size_t generator;
  std::vector<Polynomial> coefficients;
  Polynomial element;
};

struct AssocGradedResult {
  bool verified = false;
  /// First degree where either check failed.
  std::optional<std::uint32_t> mismatch_degree;
  std::string reason;
  std::vector<InitialFormWitness> witnesses;
  HilbertVector local_hf;
  HilbertVector graded_hf;
};

/// Checks that every generator of `g` is an initial form of an element of
/// (f) and that H(A,n) = dim G_n for n <= n_max. Requires n_max + 1 <= D.
AssocGradedResult verify_assoc_graded(const locring::QuotientPresentation& a,
                                      const GradedQuotient& g, std::uint32_t n_max);

struct AnnihilationCheck {
  std::size_t variable;
  Polynomial product;
  /// product = sum_i coefficients[i] * h_i, checked exactly.
  std::vector<Polynomial> coefficients;
};

struct SocleCertificate {
  Polynomial element;
  std::uint32_t degree;
  std::vector<AnnihilationCheck> checks;
};

struct SocleSearch {
  std::optional<SocleCertificate> certificate;
  /// Degrees 0..searched_to were inspected.
  std::uint32_t searched_to;
};

/// First nonzero homogeneous class killed by every variable, searching by
/// degree ascending up to max_degree.
SocleSearch socle_witness(const GradedQuotient& g, std::uint32_t max_degree);

enum class RegularVerdict { regular_certified, not_regular, inconclusive };

struct RegularSequenceResult {
  RegularVerdict verdict = RegularVerdict::inconclusive;
  std::optional<std::uint32_t> witness_degree;
  std::vector<std::int64_t> hf;
  std::vector<std::int64_t> series;
  /// sum (a_i - 1) + 1
  std::uint32_t required_check_to = 0;
  /// Variables x_S with HF(k[X]/(g, x_S)) = prod (1 + t + ... + t^{a_i - 1}),
  /// a finite-length section that independently proves regularity. Empty
  /// when no coordinate section works or the verdict is not certified.
  std::optional<std::vector<std::size_t>> linear_section;
};

/// Compares the graded HF of k[X]/(g) with prod(1 - t^{a_i})/(1 - t)^m.
RegularSequenceResult regular_sequence_test(const std::vector<std::string>& variables,
                                            FieldSpec field,
                                            const std::vector<Polynomial>& forms,
                                            std::uint32_t check_to);

std::string to_string(RegularVerdict v);

}  // namespace lochf::grmod
