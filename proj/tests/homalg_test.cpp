#include <gtest/gtest.h>

#include "corpus.hpp"
#include "lochf/error.hpp"
#include "lochf/homalg/resolution.hpp"

using namespace lochf;
using namespace lochf::homalg;
using corpus::matrix;
using corpus::quotient;
using corpus::ring;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::invalid_input;
}

}  // namespace

TEST(MatrixFactorization, DeskExamplesVerify) {
  for (const auto& [name, mf] : corpus::plane_factorizations()) {
    EXPECT_NO_THROW(mf_verify(mf)) << name;
  }
}

TEST(MatrixFactorization, WrongPairRejected) {
  const auto r = ring({"x", "y"});
  const auto bad = corpus::factorization(r, "x^2 - y^3", 2, {"x", "y", "y^2", "x"},
                                         {"x", "y", "-y^2", "x"});
  EXPECT_EQ(code_of([&] { mf_verify(bad); }), Errc::not_a_factorization);
  const auto shape = MatrixFactorization{r, r.parse("x*y"), matrix(r, 1, 2, {"x", "y"}),
                                         matrix(r, 1, 1, {"y"})};
  EXPECT_EQ(code_of([&] { mf_verify(shape); }), Errc::invalid_input);
}

TEST(MatrixFactorization, ResolutionAlternatesAndComposesToZero) {
  for (const auto& [name, mf] : corpus::plane_factorizations()) {
    const auto c = mf_resolution(mf, 4);
    ASSERT_EQ(c.length(), 4u);
    EXPECT_EQ(c.d(1), mf.phi);
    EXPECT_EQ(c.d(2), mf.psi);
    EXPECT_EQ(c.d(3), mf.phi);
    EXPECT_EQ(c.d(4), mf.psi);
    EXPECT_FALSE(c.first_nonvanishing_composite()) << name;
    // exact: consecutive products are f times the identity
    const auto n = mf.phi.rows();
    EXPECT_EQ(c.d(1) * c.d(2), mf.f * PolyMatrix::identity(mf.f.field(), 2, n));
    EXPECT_EQ(c.d(2) * c.d(3), mf.f * PolyMatrix::identity(mf.f.field(), 2, n));
    EXPECT_TRUE(c.is_minimal());
  }
}

TEST(Syzygy, ResidueFieldOverNode) {
  const auto r = ring({"x", "y"});
  const auto a = quotient(r, {"x*y"});
  const ModulePresentation k(a, matrix(r, 1, 2, {"x", "y"}));
  const auto s = syzygy_step(k, 12);
  EXPECT_EQ(s, matrix(r, 2, 2, {"y", "0", "0", "x"}));
}

TEST(Syzygy, FreeModuleHasZeroSyzygy) {
  const auto r = ring({"x", "y"});
  const auto a = quotient(r, {"x*y"});
  const auto s = syzygy_step(ModulePresentation::free(a, 2), 12);
  EXPECT_EQ(s.rows(), 0u);
  EXPECT_EQ(s.cols(), 0u);
}

TEST(Syzygy, CyclicModuleOverNodeIsPeriodic) {
  const auto r = ring({"x", "y"});
  const auto a = quotient(r, {"x*y"});
  const ModulePresentation m(a, matrix(r, 1, 1, {"x"}));
  const auto first = syzygy_step(m, 12);
  EXPECT_EQ(first, matrix(r, 1, 1, {"y"}));
  EXPECT_EQ(syzygy_step(ModulePresentation(a, first), 12), matrix(r, 1, 1, {"x"}));
}

TEST(Syzygy, NonMinimalPresentationIsMinimalized) {
  const auto r = ring({"x", "y"});
  const auto a = quotient(r, {"x*y"});
  // coker [[1, 0], [0, x]] is coker(x)
  const ModulePresentation m(a, matrix(r, 2, 2, {"1", "0", "0", "x"}));
  const auto run = minimal_resolution(m, 4, 12);
  EXPECT_EQ(run.betti, (std::vector<std::size_t>{1, 1, 1, 1, 1}));
}

TEST(Betti, Examples) {
  const auto r = ring({"x", "y"});
  const auto a = quotient(r, {"x*y"});
  const auto k = betti_table(ModulePresentation::residue_field(a), 8, 12);
  EXPECT_EQ(k.betti, (std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2, 2, 2}));
  EXPECT_EQ(k.certified_to, 8u);
  const auto free = betti_table(ModulePresentation::free(a, 2), 5, 12);
  EXPECT_EQ(free.betti, (std::vector<std::size_t>{2, 0, 0, 0, 0, 0}));
  const auto cyc = betti_table(ModulePresentation(a, matrix(r, 1, 1, {"x"})), 8, 12);
  EXPECT_EQ(cyc.betti, std::vector<std::size_t>(9, 1));
}

TEST(Betti, CompleteIntersectionResidueField) {
  // k over a codimension-c complete intersection: (1+t)^m / (1-t^2)^c
  const auto r = ring({"x", "y"});
  const auto t = betti_table(ModulePresentation::residue_field(quotient(r, {"x^2", "y^2"})), 7, 12);
  EXPECT_EQ(t.betti, (std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8}));
  const auto r3 = ring({"X", "Y", "Z"}, 10);
  const auto e = betti_table(
      ModulePresentation::residue_field(quotient(r3, {"Y^3 - X*Z", "X^5 - Z^2"})), 5, 10);
  EXPECT_EQ(e.betti, (std::vector<std::size_t>{1, 3, 5, 7, 9, 11}));
}

TEST(Betti, FactorizationCokernelsArePeriodicAndStable) {
  for (const auto& [name, mf] : corpus::plane_factorizations()) {
    const auto m = corpus::cokernel(mf);
    const auto t = betti_table(m, 8, 14);
    ASSERT_GE(t.certified_to, 6u) << name;
    for (std::size_t i = 0; i + 2 <= t.certified_to; ++i) EXPECT_EQ(t.betti[i + 2], t.betti[i]) << name;
    const auto c = resolution_complex(m, 6, 12);
    EXPECT_TRUE(c.is_minimal()) << name;
    EXPECT_FALSE(c.first_nonvanishing_composite()) << name;
  }
}

TEST(Betti, ShapesAgreeAcrossTruncations) {
  const auto r = ring({"x", "y"}, 10);
  const std::vector<std::pair<std::vector<std::string>, PolyMatrix>> cases = {
      {{"x^2 - y^3"}, matrix(r, 1, 1, {"x"})},
      {{"x^2", "y^2"}, matrix(r, 1, 1, {"x"})},
      {{"x*y"}, matrix(r, 1, 2, {"x", "y^2"})},
      {{"x^3 - y^4"}, matrix(r, 2, 2, {"x", "y", "y^3", "x^2"})},
  };
  for (const auto& [rels, phi] : cases) {
    const ModulePresentation m(quotient(r, rels), phi);
    const auto lo = betti_table(m, 6, 10);
    const auto hi = betti_table(m, 6, 12);
    for (std::size_t i = 0; i <= std::min(lo.certified_to, hi.certified_to); ++i)
      EXPECT_EQ(lo.betti[i], hi.betti[i]);
  }
}

TEST(Betti, AuslanderBuchsbaumOverRegularRing) {
  // depth M + pd M = depth Q = 2 for finite pd modules over k[[x,y]]
  const auto r = ring({"x", "y"});
  const auto q = quotient(r, {});
  const auto pd = [](const BettiTable& t) {
    std::size_t p = 0;
    for (std::size_t i = 0; i < t.betti.size(); ++i)
      if (t.betti[i] != 0) p = i;
    return static_cast<int>(p);
  };
  EXPECT_EQ(pd(betti_table(ModulePresentation::residue_field(q), 5, 10)) + 0, 2);
  EXPECT_EQ(pd(betti_table(ModulePresentation(q, matrix(r, 1, 1, {"x"})), 5, 10)) + 1, 2);
  EXPECT_EQ(pd(betti_table(ModulePresentation(q, matrix(r, 1, 2, {"x^2", "x*y"})), 5, 10)) + 0, 2);
  EXPECT_EQ(pd(betti_table(ModulePresentation::free(q, 3), 5, 10)) + 2, 2);
}

TEST(Complexity, Estimates) {
  const auto bounded = complexity_estimate({{1, 2, 2, 2, 2, 2}, 5, 12});
  EXPECT_TRUE(bounded.bounded);
  EXPECT_EQ(bounded.cx_upper_evidence, 1);
  const auto free = complexity_estimate({{2, 0, 0, 0, 0, 0}, 5, 12});
  EXPECT_TRUE(free.bounded);
  EXPECT_EQ(free.cx_upper_evidence, 0);
  const auto linear = complexity_estimate({{1, 2, 3, 4, 5, 6, 7, 8}, 7, 12});
  EXPECT_FALSE(linear.bounded);
  EXPECT_EQ(linear.cx_upper_evidence, 2);
  EXPECT_EQ(code_of([] { complexity_estimate({{1, 2, 2, 2, 2}, 4, 12}); }), Errc::window_too_short);
  EXPECT_EQ(code_of([] { complexity_estimate({{1, 2, 2, 2, 2, 2, 2}, 3, 12}); }),
            Errc::window_too_short);
}

TEST(Complexity, QuadraticGrowth) {
  std::vector<std::size_t> b;
  for (std::size_t i = 0; i < 10; ++i) b.push_back((i + 1) * (i + 2) / 2);
  EXPECT_EQ(complexity_estimate({b, 9, 12}).cx_upper_evidence, 3);
}

TEST(Vpd, Formula) {
  EXPECT_EQ(vpd_formula(1, 1, 1), 1);
  EXPECT_EQ(vpd_formula(3, 3, 0), 0);
  EXPECT_EQ(vpd_formula(2, 1, 1), 2);
  EXPECT_EQ(code_of([] { vpd_formula(-1, 0, 0); }), Errc::invalid_input);
}
