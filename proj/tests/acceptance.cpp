// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "lochf/eisops/operators.hpp"
#include "lochf/grmod/graded.hpp"
#include "lochf/homalg/resolution.hpp"
#include "lochf/locring/hilbert.hpp"
#include "lochf/numsgp/semigroup.hpp"
#include "oracles.hpp"

using namespace lochf;
using corpus::matrix;
using corpus::quotient;
using corpus::ring;
using exactla::ExactMatrix;
using exactla::FieldSpec;
using locring::ModulePresentation;
using locring::Polynomial;

namespace {

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

template <class T>
std::string show(const std::vector<T>& v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ')';
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::uint64_t> kExampleHf = {1, 3, 4, 5, 5, 6, 6, 6, 6, 6};

std::shared_ptr<const locring::QuotientPresentation> example_ring(std::uint32_t d = 12) {
  return quotient(ring({"X", "Y", "Z"}, d), {"Y^3 - X*Z", "X^5 - Z^2"});
}

grmod::GradedQuotient example_graded() {
  return grmod::GradedQuotient::parse({"X", "Y", "Z"}, FieldSpec::rationals(),
                                      {"X*Z", "Y^6", "Y^3*Z", "Z^2"});
}

// -- 1 ---------------------------------------------------------------------

std::string triple_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = numsgp::semigroup_hf({6, 7, 15}, 9);
  const auto l = locring::hilbert_function(ModulePresentation::free(example_ring(12), 1), 9);
  const auto g = grmod::graded_hf(example_graded(), 9);
  const double dt = seconds_since(t0);
  require(s.values == kExampleHf, "semigroup HF " + show(s.values));
  require(l.values == kExampleHf && l.valid_to >= 9, "local HF " + show(l.values));
  require(g.values == kExampleHf, "graded HF " + show(g.values));
  require(dt < 10.0, "took " + std::to_string(dt) + " s");
  return show(kExampleHf) + " from all three, " + std::to_string(dt) + " s";
}

// -- 2 ---------------------------------------------------------------------

std::string depth_zero_certificate() {
  const auto g = example_graded();
  const auto search = grmod::socle_witness(g, 6);
  require(search.certificate.has_value(), "no socle element found");
  const auto& c = *search.certificate;
  const std::vector<std::string> names = {"X", "Y", "Z"};
  require(c.element.to_string(names) == "Y^2*Z", "element " + c.element.to_string(names));
  require(c.degree == 3, "degree " + std::to_string(c.degree));
  require(c.checks.size() == 3, "expected three annihilation checks");
  for (const auto& a : c.checks) {
    const auto xv = Polynomial::variable(g.field(), 3, a.variable);
    require(a.product == xv * c.element, "product for " + names[a.variable]);
    require(a.product.is_zero() == false, "trivial product");
    Polynomial sum(g.field(), 3);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) sum += a.coefficients[i] * g.generators()[i];
    require(sum == a.product, names[a.variable] + "*Y^2*Z is not in the ideal");
  }
  return "Y^2*Z in degree 3, X/Y/Z annihilation identities exact";
}

// -- 3 ---------------------------------------------------------------------

std::string non_strictness() {
  const std::vector<std::string> vars = {"X", "Y", "Z"};
  const auto field = FieldSpec::rationals();
  const auto parse = [&](const std::vector<std::string>& forms) {
    std::vector<Polynomial> out;
    for (const auto& f : forms) out.push_back(locring::RingSpec{vars, 8, field}.parse(f));
    return out;
  };
  const auto bad = grmod::regular_sequence_test(vars, field, parse({"X*Z", "Z^2"}), 3);
  require(bad.verdict == grmod::RegularVerdict::not_regular,
          "(XZ, Z^2): " + grmod::to_string(bad.verdict));
  const auto good = grmod::regular_sequence_test(vars, field, parse({"X^2", "Y^3"}), 4);
  require(good.verdict == grmod::RegularVerdict::regular_certified,
          "(X^2, Y^3): " + grmod::to_string(good.verdict));
  // the series comparison, independently: (1 - t^2)(1 - t^3)/(1 - t)^3
  std::vector<std::int64_t> series = {1, 3, 5, 6, 6};
  for (std::size_t n = 0; n < series.size(); ++n)
    require(good.hf[n] == series[n], "H(" + std::to_string(n) + ") of k[X,Y,Z]/(X^2,Y^3)");
  require(bad.witness_degree.has_value(), "(XZ, Z^2): no witness degree");
  return "(XZ,Z^2) NotRegular at degree " + std::to_string(*bad.witness_degree) +
         ", (X^2,Y^3) RegularCertified";
}

// -- 4 ---------------------------------------------------------------------

std::string factorization_desk_check() {
  std::size_t checked = 0;
  for (std::uint32_t d : {12u, 14u}) {
    for (const auto& [name, mf] : corpus::plane_factorizations(d)) {
      const auto where = name + " at D=" + std::to_string(d);
      homalg::mf_verify(mf);
      const auto m = corpus::cokernel(mf);
      const auto b = homalg::betti_table(m, 8, d);
      require(b.certified_to >= 5, where + ": Betti window " + std::to_string(b.certified_to));
      for (std::size_t i = 0; i + 2 <= b.certified_to; ++i)
        require(b.betti[i + 2] == b.betti[i], where + ": Betti " + show(b.betti) + " not 2-periodic");
      require(b.betti[0] == mf.phi.rows() && b.betti[1] == mf.phi.cols(), where + ": ranks");
      const auto cx = homalg::complexity_estimate(b);
      require(cx.cx_upper_evidence <= 1 && cx.bounded, where + ": complexity evidence");
      const auto h = locring::hilbert_function(m, d - 2);
      require(h.valid_to == d - 2, where + ": HF window");
      const auto mono = locring::monotonicity_report(h);
      require(mono.nondecreasing, where + ": HF " + show(h.values) + " decreases");
      ++checked;
    }
  }
  return std::to_string(checked) + " (factorization, D) pairs, zero violations";
}

// -- 5 ---------------------------------------------------------------------

std::string example_monotone() {
  const auto h = locring::hilbert_function(ModulePresentation::free(example_ring(12), 1), 8);
  require(h.valid_to >= 8, "window");
  const auto mono = locring::monotonicity_report(h);
  require(mono.nondecreasing, "HF " + show(h.values) + " decreases");
  require(grmod::socle_witness(example_graded(), 6).certificate.has_value(), "depth G(A) = 0 witness");
  return "H = " + show(h.values) + " non-decreasing, depth G(A) = 0";
}

// -- 6 ---------------------------------------------------------------------

std::string identity_suite() {
  std::size_t families = 0;
  std::size_t commuting = 0;
  const auto check_family = [&](const std::string& name, const eisops::LiftedComplex& l,
                                const eisops::OperatorFamily& t, const homalg::FreeComplex& c,
                                bool want_exact) {
    const auto id = eisops::check_identity(l, t);
    require(!id.failure, name + ": identity fails at F_" + std::to_string(id.failure.value_or(0)));
    if (want_exact) require(id.exact, name + ": identity not exact");
    ++families;
    const auto e = eisops::ext_action(c, t);
    require(!eisops::first_noncommuting(e), name + ": Ext operators do not commute");
    ++commuting;
  };

  for (const auto& [name, mf] : corpus::plane_factorizations()) {
    const auto c = homalg::mf_resolution(mf, 6);
    const auto l = eisops::lift_complex(c);
    check_family(name, l, eisops::solve_operators(l), c, true);
  }

  std::mt19937_64 rng(20240607);
  std::size_t random_alphas = 0;
  for (const auto field : {FieldSpec::rationals(), FieldSpec::prime(7)}) {
    for (const auto& inst : corpus::instances(field)) {
      const auto where = inst.name + " over " + field.to_string();
      const auto l = eisops::lift_complex(inst.complex);
      const auto t = eisops::solve_operators(l);
      check_family(where, l, t, inst.complex, false);
      const auto c = inst.complex.over->relation_count();
      if (c != 2) continue;
      const auto nvars = inst.complex.over->nvars();

      const auto same = eisops::base_change_operators(
          l, eisops::CoefficientMatrix::constant(ExactMatrix::identity(field, 2), nvars), t);
      require(same.sequence == t.sequence && same.ops == t.ops, where + ": alpha = I changed t");
      const auto swap = eisops::base_change_operators(
          l, eisops::CoefficientMatrix::constant(ExactMatrix::from_ints(field, {{0, 1}, {1, 0}}), nvars), t);
      require(swap.sequence[0] == t.sequence[1] && swap.sequence[1] == t.sequence[0], where + ": swap");
      for (std::size_t i = 2; i <= t.top(); ++i)
        require(swap.t(0, i) == t.t(1, i) && swap.t(1, i) == t.t(0, i), where + ": swapped operators");
      check_family(where + " swapped", l, swap, inst.complex, false);

      if (!field.is_prime_field()) continue;
      int accepted = 0;
      while (accepted < 20) {
        ExactMatrix a(field, 2, 2);
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) a(i, j) = field.from_int(static_cast<long long>(rng() % 7));
        if (exactla::determinant(a).is_zero()) continue;
        ++accepted;
        const auto moved = eisops::base_change_operators(l, eisops::CoefficientMatrix::constant(a, nvars), t);
        for (std::size_t i = 0; i < 2; ++i) {
          Polynomial sum(field, nvars);
          for (std::size_t j = 0; j < 2; ++j) sum += a(i, j) * moved.sequence[j];
          require(sum == t.sequence[i], where + ": alpha g != f");
        }
        check_family(where + " random alpha", l, moved, inst.complex, false);
        ++random_alphas;
      }
    }
  }
  require(random_alphas >= 20, "too few random base changes");
  return std::to_string(families) + " families satisfy the identity, " +
         std::to_string(random_alphas) + " seeded F7 base changes, " + std::to_string(commuting) +
         " Ext actions commute";
}

// -- 7 ---------------------------------------------------------------------

std::string strict_reduction() {
  std::string p_text;
  for (std::uint32_t d : {10u, 12u}) {
    const auto r = ring({"x", "y", "z"}, d);
    const auto a = quotient(r, {"x^2", "y^2"});
    const ModulePresentation m(a, matrix(r, 1, 1, {"x"}));
    eisops::StrictOptions o;
    o.truncation = d;
    o.window = 6;
    const auto red = eisops::strict_reduction(m, o);
    const auto where = "D=" + std::to_string(d);
    const auto& rep = red.report;
    require(red.p->relation_count() == 1, where + ": P is not Q/(g_2)");
    require(rep.round_trip, where + ": alpha g != f");
    // (g) = (f) the other way round too: g = alpha^{-1} f with constant alpha
    const auto beta_inv = exactla::inverse(red.beta.transpose());
    require(beta_inv.has_value(), where + ": beta singular");
    for (std::size_t i = 0; i < 2; ++i) {
      Polynomial sum(r.field, 3);
      for (std::size_t j = 0; j < 2; ++j) sum += (*beta_inv)(i, j) * red.sorted[j];
      require(sum == red.g[i], where + ": g_" + std::to_string(i + 1) + " not in (f)");
    }
    require(rep.tail_regular.verdict == grmod::RegularVerdict::regular_certified,
            where + ": g_2* not certified regular");
    const auto& b = rep.betti_over_p;
    require(b.certified_to >= 4, where + ": window " + std::to_string(b.certified_to));
    for (std::size_t i = 2; i <= b.certified_to; ++i)
      require(b.betti[i] == 0, where + ": second syzygy over P does not vanish " + show(b.betti));
    require(rep.pd_at_most_one && rep.holds(), where + ": report");
    const auto text = red.p->relations()[0].to_string(r.variables);
    require(p_text.empty() || p_text == text, "P differs between truncations");
    p_text = text;
  }
  return "P = Q/(" + p_text + "), round trip exact, g_2* regular, pd_P M <= 1 at D=10 and D=12";
}

// -- 8 ---------------------------------------------------------------------

struct GluedSemigroup {
  std::vector<std::uint32_t> generators;
  std::vector<std::string> relations;
};

std::string power(const std::string& v, std::uint32_t e) {
  return e == 1 ? v : v + "^" + std::to_string(e);
}

std::string monomial(std::vector<std::pair<std::string, std::uint32_t>> factors) {
  std::string out;
  for (const auto& [v, e] : factors)
    if (e > 0) out += (out.empty() ? "" : "*") + power(v, e);
  return out.empty() ? "1" : out;
}

// <l p, l q, mu> is the gluing of l<p, q> and mu N when mu lies in <p, q>
// and gcd(l, mu) = 1; its ideal is (X^q - Y^p, Z^l - X^a Y^b) with mu = a p + b q.
std::optional<GluedSemigroup> glue(std::uint32_t p, std::uint32_t q, std::uint32_t l, std::uint32_t mu) {
  if (std::gcd(p, q) != 1 || std::gcd(l, mu) != 1 || l < 2) return std::nullopt;
  for (std::uint32_t a = 0; a * p <= mu; ++a) {
    if ((mu - a * p) % q != 0) continue;
    const std::uint32_t b = (mu - a * p) / q;
    if (a + b < 2) return std::nullopt;
    return GluedSemigroup{{l * p, l * q, mu},
                          {power("X", q) + " - " + power("Y", p),
                           power("Z", l) + " - " + monomial({{"X", a}, {"Y", b}})}};
  }
  return std::nullopt;
}

std::vector<GluedSemigroup> random_semigroups(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GluedSemigroup> out;
  while (out.size() < count) {
    if (rng() % 4 == 0) {
      // plane branch <p, q>: X^q - Y^p
      const auto p = static_cast<std::uint32_t>(2 + rng() % 9);
      const auto q = static_cast<std::uint32_t>(p + 1 + rng() % 9);
      if (std::gcd(p, q) != 1) continue;
      out.push_back({{p, q}, {power("X", q) + " - " + power("Y", p)}});
      continue;
    }
    const auto p = static_cast<std::uint32_t>(2 + rng() % 4);
    const auto q = static_cast<std::uint32_t>(p + 1 + rng() % 5);
    const auto l = static_cast<std::uint32_t>(2 + rng() % 3);
    const auto mu = static_cast<std::uint32_t>(p + 1 + rng() % 20);
    const auto g = glue(p, q, l, mu);
    if (!g) continue;
    const auto s = numsgp::semigroup_closure(g->generators);
    if (s.embedding_dimension() != 3 || s.multiplicity > 10) continue;
    if (std::find_if(out.begin(), out.end(), [&](const auto& o) { return o.generators == g->generators; }) != out.end())
      continue;
    out.push_back(*g);
  }
  return out;
}

std::string oracle_equivalence() {
  const auto sample = random_semigroups(20, 8675309);
  std::size_t three = 0;
  for (const auto& s : sample) {
    const auto where = "<" + show(s.generators) + ">";
    const std::vector<std::string> vars =
        s.generators.size() == 2 ? std::vector<std::string>{"X", "Y"} : std::vector<std::string>{"X", "Y", "Z"};
    const auto a = quotient(ring(vars, 9), s.relations);
    const auto check = numsgp::verify_presentation(s.generators, *a, 6);
    require(check.verified, where + ": presentation refuted: " + check.reason);
    const auto sh = numsgp::semigroup_hf(s.generators, 6);
    const auto lh = locring::hilbert_function(ModulePresentation::free(a, 1), 6);
    require(lh.valid_to >= 6, where + ": local window");
    require(sh.values == lh.values, where + ": " + show(sh.values) + " vs " + show(lh.values));
    const std::vector<int> gi(s.generators.begin(), s.generators.end());
    const auto o = oracle::semigroup_hf(gi, 6);
    require(std::equal(o.begin(), o.end(), sh.values.begin()), where + ": oracle disagrees");
    if (s.generators.size() == 3) ++three;
  }

  // Betti tables at D and D + 2 agree wherever both are certified.
  std::size_t modules = 0;
  const auto compare = [&](const std::string& name, const ModulePresentation& m, std::size_t n,
                           std::uint32_t d) {
    const auto lo = homalg::betti_table(m, n, d);
    const auto hi = homalg::betti_table(m.with_truncation(d + 2), n, d + 2);
    require(lo.certified_to >= 2 && hi.certified_to >= 2, name + ": empty certified window");
    for (std::size_t i = 0; i <= std::min(lo.certified_to, hi.certified_to); ++i)
      require(lo.betti[i] == hi.betti[i], name + ": beta_" + std::to_string(i) + " differs");
    ++modules;
  };
  for (const auto& [name, mf] : corpus::plane_factorizations(10)) compare(name, corpus::cokernel(mf), 6, 10);
  for (const auto& inst : corpus::instances(FieldSpec::rationals())) {
    const auto& over = inst.complex.over;
    compare(inst.name, ModulePresentation::residue_field(over), 5, over->truncation());
  }
  for (std::size_t i = 0; i < sample.size(); i += 4) {
    const auto& s = sample[i];
    const std::vector<std::string> vars =
        s.generators.size() == 2 ? std::vector<std::string>{"X", "Y"} : std::vector<std::string>{"X", "Y", "Z"};
    // D past the largest relation order, so every relation is visible
    std::uint32_t d = 9;
    for (const auto& f : quotient(ring(vars, 9), s.relations)->relations()) d = std::max(d, *f.ord() + 3);
    const auto a = quotient(ring(vars, d), s.relations);
    compare("k over <" + show(s.generators) + ">", ModulePresentation::residue_field(a), 4, d);
  }
  return "20 semigroups (" + std::to_string(three) + " of embedding dimension 3) agree for n <= 6; " +
         std::to_string(modules) + " Betti tables stable from D to D+2";
}

// -- 9 ---------------------------------------------------------------------

constexpr std::uint32_t kScanFrobeniusCap = 500;

std::string scan() {
  const auto t0 = std::chrono::steady_clock::now();
  numsgp::ScanConstraints c;
  c.min_embdim = 3;
  c.max_embdim = 3;
  c.max_multiplicity = 8;
  c.max_frobenius = kScanFrobeniusCap;
  const auto r = numsgp::monotonicity_scan(c);
  const double dt = seconds_since(t0);
  require(r.embdim3_scanned == r.scanned && r.scanned > 0, "scan covered nothing");
  if (r.embdim3_violations != 0)
    throw Failure{std::to_string(r.embdim3_violations) + " violations, first " +
                  show(r.violations.front().generators)};
  require(dt < 60.0, "took " + std::to_string(dt) + " s");
  return std::to_string(r.scanned) + " semigroups with e <= 8, F <= " +
         std::to_string(kScanFrobeniusCap) + ", zero violations, " + std::to_string(dt) + " s";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"triple Hilbert function agreement", triple_agreement},
      {"depth-zero certificate", depth_zero_certificate},
      {"non-strictness detection", non_strictness},
      {"matrix factorization desk check", factorization_desk_check},
      {"codimension-two monotonicity", example_monotone},
      {"Eisenbud identity suite", identity_suite},
      {"strict reduction", strict_reduction},
      {"semigroup oracle equivalence", oracle_equivalence},
      {"embedding dimension three scan", scan},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, run] = criteria[i];
    std::string line;
    try {
      line = "PASS " + std::to_string(i + 1) + " " + name + ": " + run();
    } catch (const Failure& f) {
      line = "FAIL " + std::to_string(i + 1) + " " + name + ": " + f.what;
      ++failed;
    } catch (const std::exception& e) {
      line = "FAIL " + std::to_string(i + 1) + " " + name + ": exception: " + e.what();
      ++failed;
    }
    std::cout << line << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
