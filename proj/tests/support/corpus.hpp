#pragma once
// Small rings and modules shared by several suites.

#include <memory>
#include <string>
#include <vector>

#include "lochf/homalg/resolution.hpp"
#include "lochf/locring/presentation.hpp"

namespace corpus {

using namespace lochf;
using locring::ModulePresentation;
using locring::PolyMatrix;
using locring::QuotientPresentation;
using locring::RingSpec;

inline RingSpec ring(std::vector<std::string> vars, std::uint32_t d = 12,
                     exactla::FieldSpec field = exactla::FieldSpec::rationals()) {
  return RingSpec{std::move(vars), d, field};
}

inline std::shared_ptr<const QuotientPresentation> quotient(const RingSpec& r,
                                                            std::vector<std::string> rels) {
  return std::make_shared<const QuotientPresentation>(QuotientPresentation::parse(r, rels));
}

inline PolyMatrix matrix(const RingSpec& r, std::size_t rows, std::size_t cols,
                         const std::vector<std::string>& entries) {
  PolyMatrix m(r.field, r.nvars(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = r.parse(entries[i * cols + j]);
  return m;
}

struct Factorization {
  std::string name;
  homalg::MatrixFactorization mf;
};

inline homalg::MatrixFactorization factorization(const RingSpec& r, const std::string& f,
                                                 std::size_t n,
                                                 const std::vector<std::string>& phi,
                                                 const std::vector<std::string>& psi) {
  return {r, r.parse(f), matrix(r, n, n, phi), matrix(r, n, n, psi)};
}

/// Matrix factorizations over k[[x,y]] for the five hypersurfaces of the
/// desk check, plus x^2 - y^2.
inline std::vector<Factorization> plane_factorizations(std::uint32_t d = 12) {
  const auto r = ring({"x", "y"}, d);
  return {
      {"xy", factorization(r, "x*y", 1, {"x"}, {"y"})},
      {"y^3", factorization(r, "y^3", 1, {"y"}, {"y^2"})},
      {"x^2-y^3", factorization(r, "x^2 - y^3", 2, {"x", "y", "y^2", "x"},
                                {"x", "-y", "-y^2", "x"})},
      {"x^2-y^4", factorization(r, "x^2 - y^4", 2, {"x", "y^2", "y^2", "x"},
                                {"x", "-y^2", "-y^2", "x"})},
      {"x^3-y^4", factorization(r, "x^3 - y^4", 2, {"x", "y", "y^3", "x^2"},
                                {"x^2", "-y", "-y^3", "x"})},
      {"x^2-y^2", factorization(r, "x^2 - y^2", 2, {"x", "y", "y", "x"},
                                {"x", "-y", "-y", "x"})},
  };
}

inline ModulePresentation cokernel(const homalg::MatrixFactorization& mf) {
  return ModulePresentation(
      std::make_shared<const QuotientPresentation>(mf.ring, std::vector<locring::Polynomial>{mf.f}),
      mf.phi);
}

struct Instance {
  std::string name;
  homalg::FreeComplex complex;
};

/// Minimal resolutions used as Eisenbud operator inputs.
inline std::vector<Instance> instances(exactla::FieldSpec field) {
  std::vector<Instance> out;
  const auto r2 = ring({"x", "y"}, 10, field);
  const auto r3 = ring({"x", "y", "z"}, 9, field);
  const auto ci = quotient(r2, {"x^2", "y^2"});
  out.push_back({"k over (x^2, y^2)",
                 homalg::resolution_complex(ModulePresentation::residue_field(ci), 5, 10)});
  const auto ci3 = quotient(r3, {"x^2", "y^2"});
  out.push_back({"coker x over (x^2, y^2)",
                 homalg::resolution_complex(ModulePresentation(ci3, matrix(r3, 1, 1, {"x"})), 6, 9)});
  const auto mixed = quotient(r2, {"x^2 - y^3", "x*y"});
  out.push_back({"k over (x^2 - y^3, xy)",
                 homalg::resolution_complex(ModulePresentation::residue_field(mixed), 5, 10)});
  const auto hyper = quotient(r2, {"x^3 - y^4"});
  out.push_back({"k over (x^3 - y^4)",
                 homalg::resolution_complex(ModulePresentation::residue_field(hyper), 6, 10)});
  return out;
}

}  // namespace corpus
