#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lochf/error.hpp"
#include "lochf/grmod/graded.hpp"
#include "lochf/locring/expression.hpp"
#include "oracles.hpp"

using namespace lochf;
using namespace lochf::grmod;

namespace {

const std::vector<std::string> kXYZ = {"X", "Y", "Z"};
const auto kQ = FieldSpec::rationals();

GradedQuotient graded(std::vector<std::string> vars, std::vector<std::string> gens,
                      FieldSpec field = kQ) {
  return GradedQuotient::parse(std::move(vars), field, gens);
}

std::vector<Polynomial> forms(const std::vector<std::string>& vars,
                              const std::vector<std::string>& texts) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(locring::parse_polynomial(t, vars, kQ));
  return out;
}

locring::QuotientPresentation example_ring(std::uint32_t d = 12) {
  return locring::QuotientPresentation::parse({kXYZ, d, kQ}, {"Y^3 - X*Z", "X^5 - Z^2"});
}

std::vector<std::uint64_t> u64(std::vector<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(GradedHf, ExampleTangentCone) {
  const auto g = graded(kXYZ, {"X*Z", "Y^6", "Y^3*Z", "Z^2"});
  EXPECT_EQ(graded_hf(g, 9).values, u64({1, 3, 4, 5, 5, 6, 6, 6, 6, 6}));
  EXPECT_TRUE(g.is_monomial());
}

TEST(GradedHf, MatchesMonomialCount) {
  const auto g = graded(kXYZ, {"X*Z", "Y^6", "Y^3*Z", "Z^2"});
  const std::vector<oracle::Exps> gens = {{1, 0, 1}, {0, 6, 0}, {0, 3, 1}, {0, 0, 2}};
  const auto h = graded_hf(g, 14);
  for (int n = 0; n <= 14; ++n)
    EXPECT_EQ(h.values[n], static_cast<std::uint64_t>(oracle::standard_monomials(3, n, gens)));
}

TEST(GradedHf, PolynomialRingAndDoubleRoot) {
  EXPECT_EQ(graded_hf(graded({"x", "y"}, {}), 4).values, u64({1, 2, 3, 4, 5}));
  EXPECT_EQ(graded_hf(graded({"X"}, {"X^2"}), 4).values, u64({1, 1, 0, 0, 0}));
}

TEST(GradedHf, IndependentOfOrderAndRedundantGenerators) {
  std::vector<std::string> gens = {"X*Z + Y^2", "Y^3 - X^2*Z", "Z^3", "X*Y*Z"};
  const auto base = graded_hf(graded(kXYZ, gens), 9);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(gens.begin(), gens.end(), rng);
    auto augmented = gens;
    augmented.push_back("X*(X*Z + Y^2) + 3*Z^3");
    augmented.push_back("Y*X*Y*Z");
    EXPECT_EQ(graded_hf(graded(kXYZ, gens), 9).values, base.values);
    EXPECT_EQ(graded_hf(graded(kXYZ, augmented), 9).values, base.values);
  }
}

TEST(GradedQuotient, RejectsInhomogeneousGenerators) {
  EXPECT_THROW(graded(kXYZ, {"X + Y^2"}), Error);
  EXPECT_THROW(graded(kXYZ, {"1"}), Error);
}

TEST(VerifyAssocGraded, ExampleVerified) {
  const auto a = example_ring();
  const auto g = graded(kXYZ, {"X*Z", "Y^6", "Y^3*Z", "Z^2"});
  const auto r = verify_assoc_graded(a, g, 9);
  EXPECT_TRUE(r.verified) << r.reason;
  EXPECT_EQ(r.local_hf.values, r.graded_hf.values);
  ASSERT_EQ(r.witnesses.size(), 4u);
  for (const auto& w : r.witnesses) {
    Polynomial sum(kQ, 3);
    for (std::size_t j = 0; j < w.coefficients.size(); ++j) sum += w.coefficients[j] * a.relations()[j];
    EXPECT_EQ(sum, w.element);
    EXPECT_EQ(w.element.initial_form(), g.generators()[w.generator]);
  }
}

TEST(VerifyAssocGraded, SmallerIdealRefutedAtFirstExcessDegree) {
  const auto r = verify_assoc_graded(example_ring(), graded(kXYZ, {"X*Z", "Z^2"}), 9);
  EXPECT_FALSE(r.verified);
  ASSERT_TRUE(r.mismatch_degree);
  // n + 2 from degree 1 on against (1,3,4,5,5,6,...): first excess in degree 4
  EXPECT_EQ(*r.mismatch_degree, 4u);
  EXPECT_EQ(r.graded_hf.values[4], 6u);
  EXPECT_EQ(r.local_hf.values[4], 5u);
  EXPECT_EQ(r.graded_hf.values[6], 8u);
}

TEST(VerifyAssocGraded, NonInitialFormRefuted) {
  const auto r =
      verify_assoc_graded(example_ring(), graded(kXYZ, {"X*Y", "Y^6", "Y^3*Z", "Z^2"}), 9);
  EXPECT_FALSE(r.verified);
  EXPECT_EQ(r.mismatch_degree, 2u);
}

TEST(VerifyAssocGraded, RegularRingAgainstZeroIdeal) {
  const auto a = locring::QuotientPresentation::parse({{"x", "y"}, 8, kQ}, {});
  EXPECT_TRUE(verify_assoc_graded(a, graded({"x", "y"}, {}), 7).verified);
}

TEST(VerifyAssocGraded, PrecisionGuard) {
  EXPECT_THROW(verify_assoc_graded(example_ring(9), graded(kXYZ, {"X*Z"}), 9), Error);
}

TEST(Socle, ExampleCertificate) {
  const auto g = graded(kXYZ, {"X*Z", "Y^6", "Y^3*Z", "Z^2"});
  const auto s = socle_witness(g, 6);
  ASSERT_TRUE(s.certificate);
  const auto& c = *s.certificate;
  EXPECT_EQ(c.degree, 3u);
  EXPECT_EQ(c.element, locring::parse_polynomial("Y^2*Z", kXYZ, kQ));
  ASSERT_EQ(c.checks.size(), 3u);
  for (const auto& check : c.checks) {
    Polynomial sum(kQ, 3);
    for (std::size_t i = 0; i < check.coefficients.size(); ++i)
      sum += check.coefficients[i] * g.generators()[i];
    EXPECT_EQ(sum, check.product);
    EXPECT_EQ(check.product, c.element * Polynomial::variable(kQ, 3, check.variable));
  }
}

TEST(Socle, PolynomialRingHasNone) {
  const auto s = socle_witness(graded({"x", "y"}, {}), 8);
  EXPECT_FALSE(s.certificate);
  EXPECT_EQ(s.searched_to, 8u);
}

TEST(Socle, DoubleRoot) {
  const auto s = socle_witness(graded({"X"}, {"X^2"}), 4);
  ASSERT_TRUE(s.certificate);
  EXPECT_EQ(s.certificate->element, locring::parse_polynomial("X", std::vector<std::string>{"X"}, kQ));
}

TEST(RegularSequence, TangentConeOfExampleIsNotRegular) {
  const auto r = regular_sequence_test(kXYZ, kQ, forms(kXYZ, {"X*Z", "Z^2"}), 8);
  EXPECT_EQ(r.verdict, RegularVerdict::not_regular);
  EXPECT_EQ(r.witness_degree, 3u);
}

TEST(RegularSequence, PurePowersCertified) {
  const auto r = regular_sequence_test(kXYZ, kQ, forms(kXYZ, {"X^2", "Y^3"}), 8);
  EXPECT_EQ(r.verdict, RegularVerdict::regular_certified);
  const auto expected = oracle::ci_series(3, {2, 3}, 8);
  EXPECT_EQ(r.series, std::vector<std::int64_t>(expected.begin(), expected.end()));
  EXPECT_EQ(r.hf, r.series);
  EXPECT_TRUE(r.linear_section);
}

TEST(RegularSequence, SingleLinearForm) {
  const auto r = regular_sequence_test(kXYZ, kQ, forms(kXYZ, {"X"}), 3);
  EXPECT_EQ(r.verdict, RegularVerdict::regular_certified);
}

TEST(RegularSequence, ShortWindowIsInconclusive) {
  const auto r = regular_sequence_test(kXYZ, kQ, forms(kXYZ, {"X^3", "Y^3"}), 4);
  EXPECT_EQ(r.verdict, RegularVerdict::inconclusive);
}

TEST(RegularSequence, SymmetricUnderPermutation) {
  const std::vector<std::vector<std::string>> cases = {
      {"X*Z", "Z^2"}, {"X^2", "Y^3"}, {"X*Y", "X*Z", "Y^2 - Z^2"}, {"X^2 - Y^2", "X*Y", "Z^3"}};
  for (auto texts : cases) {
    const auto base = regular_sequence_test(kXYZ, kQ, forms(kXYZ, texts), 7);
    std::sort(texts.begin(), texts.end());
    do {
      const auto r = regular_sequence_test(kXYZ, kQ, forms(kXYZ, texts), 7);
      EXPECT_EQ(r.verdict, base.verdict);
      EXPECT_EQ(r.witness_degree, base.witness_degree);
    } while (std::next_permutation(texts.begin(), texts.end()));
  }
}
