#pragma once

#include <memory>
#include <vector>

#include "lochf/locring/ring.hpp"

namespace lochf::locring {

/// A = Q/(f_1..f_c) with the f_i declared to form a regular sequence in n^2.
/// Relations are kept as exact polynomials; truncation happens only inside
/// computations.
class QuotientPresentation {
 public:
  QuotientPresentation(RingSpec ring, std::vector<Polynomial> relations,
                       bool declared_strict = false);

  static QuotientPresentation parse(RingSpec ring,
                                    const std::vector<std::string>& relations,
                                    bool declared_strict = false);

  const RingSpec& ring() const noexcept { return ring_; }
  FieldSpec field() const noexcept { return ring_.field; }
  std::size_t nvars() const noexcept { return ring_.nvars(); }
  std::uint32_t truncation() const noexcept { return ring_.truncation; }
  const std::vector<Polynomial>& relations() const noexcept { return relations_; }
  std::size_t relation_count() const noexcept { return relations_.size(); }

  /// m - c; trusts the declared regularity of the relations.
  int declared_dim() const noexcept { return declared_dim_; }
  /// H(A,1) = dim n/(n^2 + (f)).
  int embdim() const noexcept { return embdim_; }
  int codim() const noexcept { return embdim_ - declared_dim_; }
  bool declared_strict() const noexcept { return declared_strict_; }

  QuotientPresentation with_truncation(std::uint32_t d) const;
  QuotientPresentation with_relations(std::vector<Polynomial> relations) const;

 private:
  RingSpec ring_;
  std::vector<Polynomial> relations_;
  int declared_dim_;
  int embdim_;
  bool declared_strict_;
};

/// M = coker(Phi: A^s -> A^r).
class ModulePresentation {
 public:
  ModulePresentation(std::shared_ptr<const QuotientPresentation> over, PolyMatrix phi);

  static ModulePresentation free(std::shared_ptr<const QuotientPresentation> over,
                                 std::size_t rank);
  /// k = coker [x_1 ... x_m].
  static ModulePresentation residue_field(std::shared_ptr<const QuotientPresentation> over);

  const QuotientPresentation& over() const noexcept { return *over_; }
  std::shared_ptr<const QuotientPresentation> over_ptr() const noexcept { return over_; }
  std::size_t rank() const noexcept { return phi_.rows(); }
  const PolyMatrix& matrix() const noexcept { return phi_; }

  /// Columns of Phi together with f_j e_i for every relation and component:
  /// generators of N with M = Q^r / N.
  std::vector<std::vector<Polynomial>> relation_generators() const;

  ModulePresentation with_truncation(std::uint32_t d) const;
  /// Same presentation over another quotient of the same ambient ring.
  ModulePresentation over_ring(std::shared_ptr<const QuotientPresentation> other) const;

 private:
  std::shared_ptr<const QuotientPresentation> over_;
  PolyMatrix phi_;
};

}  // namespace lochf::locring
