#include <gtest/gtest.h>

#include "lochf/error.hpp"
#include "lochf/locring/expression.hpp"
#include "lochf/locring/hilbert.hpp"
#include "lochf/locring/presentation.hpp"
#include "oracles.hpp"

using namespace lochf;
using namespace lochf::locring;

namespace {

RingSpec ring(std::vector<std::string> vars, std::uint32_t d = 12,
              FieldSpec field = FieldSpec::rationals()) {
  return RingSpec{std::move(vars), d, field};
}

std::shared_ptr<const QuotientPresentation> quotient(RingSpec r,
                                                     std::vector<std::string> rels) {
  return std::make_shared<const QuotientPresentation>(
      QuotientPresentation::parse(std::move(r), rels));
}

PolyMatrix matrix(const RingSpec& r, std::size_t rows, std::size_t cols,
                  const std::vector<std::string>& entries) {
  PolyMatrix m(r.field, r.nvars(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = r.parse(entries[i * cols + j]);
  return m;
}

std::vector<std::uint64_t> u64(std::vector<int> v) {
  return {v.begin(), v.end()};
}

const std::vector<std::string> kXYZ = {"X", "Y", "Z"};

}  // namespace

TEST(Polynomial, OrdAndInitialForm) {
  const auto r = ring(kXYZ);
  EXPECT_EQ(r.parse("Y^3 - X*Z").ord(), 2u);
  EXPECT_EQ(r.parse("X^5 - Z^2").ord(), 2u);
  EXPECT_EQ(r.parse("1 + X").ord(), 0u);
  EXPECT_FALSE(r.parse("0").ord());
  EXPECT_EQ(r.parse("Y^3 - X*Z").initial_form(), r.parse("-X*Z"));
  EXPECT_EQ(r.parse("X^5 - Z^2").initial_form(), r.parse("-Z^2"));
  EXPECT_EQ(r.parse("X*Y + Z^2").initial_form(), r.parse("X*Y + Z^2"));
  EXPECT_THROW(r.parse("0").initial_form(), Error);
}

TEST(Polynomial, PrintsHighestDegreeFirst) {
  const auto r = ring(kXYZ);
  EXPECT_EQ(r.parse("-X*Z + Y^3").to_string(r.variables), "Y^3 - X*Z");
  EXPECT_EQ(r.parse("(X+Y)^2").to_string(r.variables), "X^2 + 2*X*Y + Y^2");
}

TEST(Expression, ReportsColumn) {
  const auto r = ring(kXYZ);
  try {
    r.parse("X + W");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse_error);
    EXPECT_NE(std::string(e.what()).find("5"), std::string::npos);
  }
  EXPECT_THROW(r.parse("X +"), Error);
  EXPECT_THROW(r.parse("X / Y"), Error);
  EXPECT_EQ(r.parse("X^2/2*2"), r.parse("X^2"));
}

TEST(TruncatedSeries, ProductDropsHighDegrees) {
  auto r = std::make_shared<const RingSpec>(ring({"x", "y"}, 4));
  TruncatedSeries a(r, r->parse("x + y^2"));
  TruncatedSeries b(r, r->parse("x^2 + y"));
  EXPECT_EQ((a * b).value(), r->parse("x^3 + y^3 + x*y"));
}

TEST(Presentation, DerivedInvariants) {
  const auto a = quotient(ring(kXYZ), {"Y^3 - X*Z", "X^5 - Z^2"});
  EXPECT_EQ(a->declared_dim(), 1);
  EXPECT_EQ(a->embdim(), 3);
  EXPECT_EQ(a->codim(), 2);
  EXPECT_THROW(quotient(ring(kXYZ), {"X + Y^2"}), Error);
  EXPECT_THROW(quotient(ring({"x"}), {"x^2", "x^3"}), Error);
}

TEST(Hilbert, ExampleRingMatchesSemigroupOracle) {
  const auto a = quotient(ring(kXYZ), {"Y^3 - X*Z", "X^5 - Z^2"});
  const auto h = hilbert_function(ModulePresentation::free(a, 1), 9);
  EXPECT_EQ(h.values, u64(oracle::semigroup_hf({6, 7, 15}, 9)));
  EXPECT_EQ(h.values, u64({1, 3, 4, 5, 5, 6, 6, 6, 6, 6}));
  EXPECT_EQ(h.valid_to, 9u);
  EXPECT_TRUE(monotonicity_report(h).nondecreasing);
}

TEST(Hilbert, ResidueFieldAndCyclicModule) {
  const auto r = ring({"x", "y"});
  const auto a = quotient(r, {"x*y"});
  EXPECT_EQ(hilbert_function(ModulePresentation::residue_field(a), 5).values,
            u64({1, 0, 0, 0, 0, 0}));
  const ModulePresentation m(a, matrix(r, 1, 1, {"x"}));
  EXPECT_EQ(hilbert_function(m, 10).values, u64(std::vector<int>(11, 1)));
}

TEST(Hilbert, LayerBasis) {
  const auto a = quotient(ring(kXYZ), {"Y^3 - X*Z", "X^5 - Z^2"});
  const auto free = ModulePresentation::free(a, 1);
  EXPECT_EQ(layer_basis(free, 0).size(), 1u);
  EXPECT_EQ(layer_basis(free, 1).size(), 3u);
  EXPECT_TRUE(layer_basis(ModulePresentation::residue_field(a), 1).empty());
  EXPECT_THROW(layer_basis(free, 12), Error);
}

TEST(Hilbert, PrecisionBoundary) {
  const auto a = quotient(ring(kXYZ, 6), {"Y^3 - X*Z", "X^5 - Z^2"});
  const auto free = ModulePresentation::free(a, 1);
  try {
    hilbert_function(free, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precision_exceeded);
  }
  EXPECT_EQ(hilbert_function(free, 5).valid_to, 4u);
}

TEST(Hilbert, FreeModuleScalesByRank) {
  const auto a = quotient(ring(kXYZ), {"Y^3 - X*Z", "X^5 - Z^2"});
  const auto h1 = hilbert_function(ModulePresentation::free(a, 1), 8);
  const auto h3 = hilbert_function(ModulePresentation::free(a, 3), 8);
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(h3.values[n], 3 * h1.values[n]);
}

TEST(Hilbert, MinimalGeneratorCount) {
  // mu(M) = r - rank(Phi mod m)
  const auto r = ring({"x", "y"});
  const auto a = quotient(r, {"x^2 - y^3"});
  const ModulePresentation m(a, matrix(r, 3, 2, {"1", "x", "y", "0", "0", "2 + x"}));
  EXPECT_EQ(hilbert_function(m, 0).values[0], 1u);
}

TEST(Hilbert, AgreesAcrossTruncations) {
  const auto r = ring({"x", "y"}, 10);
  const auto a = quotient(r, {"x^2 - y^3"});
  const ModulePresentation m(a, matrix(r, 2, 2, {"x", "y", "y^2", "x"}));
  const auto lo = hilbert_function(m, 8);
  const auto hi = hilbert_function(m.with_truncation(12), 10);
  for (std::size_t n = 0; n <= lo.valid_to; ++n) EXPECT_EQ(lo.values[n], hi.values[n]);
}

TEST(Hilbert, MonomialQuotientMatchesMonomialCount) {
  const auto a = quotient(ring(kXYZ), {"X*Z", "Z^2"});
  const auto h = hilbert_function(ModulePresentation::free(a, 1), 10);
  for (int n = 0; n <= 10; ++n)
    EXPECT_EQ(h.values[n],
              static_cast<std::uint64_t>(oracle::standard_monomials(3, n, {{1, 0, 1}, {0, 0, 2}})));
}

TEST(Monotonicity, Reports) {
  EXPECT_TRUE(monotonicity_report({{1, 3, 4, 5, 5, 6}, 5}).nondecreasing);
  const auto bad = monotonicity_report({{1, 4, 3}, 2});
  EXPECT_FALSE(bad.nondecreasing);
  EXPECT_EQ(bad.first_violation, 1u);
  EXPECT_TRUE(monotonicity_report({{1, 1, 1}, 2}).nondecreasing);
  // a drop past valid_to is not certified and not reported
  EXPECT_TRUE(monotonicity_report({{1, 2, 1}, 1}).nondecreasing);
}
