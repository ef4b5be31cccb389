#include "lochf/locring/presentation.hpp"

#include "lochf/error.hpp"
#include "lochf/exactla/matrix.hpp"

namespace lochf::locring {

QuotientPresentation::QuotientPresentation(RingSpec ring,
                                           std::vector<Polynomial> relations,
                                           bool declared_strict)
    : ring_(std::move(ring)),
      relations_(std::move(relations)),
      declared_strict_(declared_strict) {
  ring_.validate();
  const std::size_t m = ring_.nvars();
  if (relations_.size() > m) {
    throw Error(Errc::invalid_input, "more relations than variables");
  }
  exactla::ExactMatrix linear(ring_.field, relations_.size(), m);
  for (std::size_t j = 0; j < relations_.size(); ++j) {
    const auto& f = relations_[j];
    if (f.nvars() != m || !(f.field() == ring_.field)) {
      throw Error(Errc::invalid_input, "relation over a different ring");
    }
    if (f.is_zero() || *f.ord() < 2) {
      throw Error(Errc::invalid_input,
                  "relation " + f.to_string(ring_.variables) + " is not in n^2");
    }
    for (std::size_t i = 0; i < m; ++i) {
      linear(j, i) = f.coefficient(Monomial::variable(m, i));
    }
  }
  declared_dim_ = static_cast<int>(m - relations_.size());
  embdim_ = static_cast<int>(m - exactla::rank(linear));
}

QuotientPresentation QuotientPresentation::parse(RingSpec ring,
                                                 const std::vector<std::string>& relations,
                                                 bool declared_strict) {
  std::vector<Polynomial> polys;
  for (const auto& r : relations) polys.push_back(ring.parse(r));
  return QuotientPresentation(std::move(ring), std::move(polys), declared_strict);
}

QuotientPresentation QuotientPresentation::with_truncation(std::uint32_t d) const {
  return QuotientPresentation(ring_.with_truncation(d), relations_, declared_strict_);
}

QuotientPresentation QuotientPresentation::with_relations(
    std::vector<Polynomial> relations) const {
  return QuotientPresentation(ring_, std::move(relations), false);
}

ModulePresentation::ModulePresentation(std::shared_ptr<const QuotientPresentation> over,
                                       PolyMatrix phi)
    : over_(std::move(over)), phi_(std::move(phi)) {
  if (!over_) throw Error(Errc::invalid_input, "module without a ring");
  if (phi_.rows() == 0) throw Error(Errc::invalid_input, "module of rank zero");
  if (phi_.nvars() != over_->nvars() || !(phi_.field() == over_->field())) {
    throw Error(Errc::invalid_input, "presentation matrix over a different ring");
  }
}

ModulePresentation ModulePresentation::free(
    std::shared_ptr<const QuotientPresentation> over, std::size_t rank) {
  const auto field = over->field();
  const auto m = over->nvars();
  return ModulePresentation(std::move(over), PolyMatrix(field, m, rank, 0));
}

ModulePresentation ModulePresentation::residue_field(
    std::shared_ptr<const QuotientPresentation> over) {
  const auto field = over->field();
  const auto m = over->nvars();
  PolyMatrix phi(field, m, 1, m);
  for (std::size_t i = 0; i < m; ++i) phi(0, i) = Polynomial::variable(field, m, i);
  return ModulePresentation(std::move(over), std::move(phi));
}

std::vector<std::vector<Polynomial>> ModulePresentation::relation_generators() const {
  std::vector<std::vector<Polynomial>> gens;
  for (std::size_t j = 0; j < phi_.cols(); ++j) gens.push_back(phi_.column(j));
  const std::size_t r = rank();
  for (const auto& f : over_->relations()) {
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Polynomial> g(r, Polynomial(over_->field(), over_->nvars()));
      g[i] = f;
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

ModulePresentation ModulePresentation::with_truncation(std::uint32_t d) const {
  return ModulePresentation(
      std::make_shared<const QuotientPresentation>(over_->with_truncation(d)), phi_);
}

ModulePresentation ModulePresentation::over_ring(
    std::shared_ptr<const QuotientPresentation> other) const {
  return ModulePresentation(std::move(other), phi_);
}

}  // namespace lochf::locring
