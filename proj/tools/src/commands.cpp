#include "lochf/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <random>
#include <thread>

#include "lochf/eisops/operators.hpp"
#include "lochf/grmod/graded.hpp"
#include "lochf/homalg/resolution.hpp"
#include "lochf/locring/hilbert.hpp"
#include "lochf/numsgp/semigroup.hpp"

namespace lochf::cli {

namespace {

using exactla::ExactMatrix;
using exactla::FieldSpec;
using locring::HilbertVector;
using locring::ModulePresentation;
using locring::PolyMatrix;
using locring::Polynomial;
using Task = std::function<Outcome()>;

// -- serialization ---------------------------------------------------------

Json hf_json(const HilbertVector& h) {
  Json j{{"H", h.values}, {"valid_to", h.valid_to}};
  if (h.valid_to + 1 < h.values.size())
    j["evidence"] = "H(n) for n > " + std::to_string(h.valid_to) + " is not certified";
  return j;
}

Json grid(const PolyMatrix& m, const std::vector<std::string>& names) {
  Json rows = Json::array();
  for (const auto& r : m.to_strings(names)) rows.push_back(r);
  return rows;
}

Json grid(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json polys(const std::vector<Polynomial>& ps, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string(names));
  return out;
}

Json betti_json(const homalg::BettiTable& b) {
  Json j{{"beta", b.betti}, {"certified_to", b.certified_to}, {"truncation", b.truncation}};
  if (b.certified_to + 1 < b.betti.size())
    j["evidence"] = "beta_i for i > " + std::to_string(b.certified_to) +
                    " differs or was not reached at truncation " + std::to_string(b.truncation + 2);
  return j;
}

Json regular_json(const grmod::RegularSequenceResult& r, const std::vector<std::string>& names) {
  Json j{{"verdict", grmod::to_string(r.verdict)}, {"required_check_to", r.required_check_to}};
  j["hf"] = Json{{"H", r.hf}, {"valid_to", r.hf.empty() ? 0 : r.hf.size() - 1}};
  j["series"] = r.series;
  if (r.witness_degree) j["witness_degree"] = *r.witness_degree;
  if (r.linear_section) {
    Json vars = Json::array();
    for (auto v : *r.linear_section) vars.push_back(names[v]);
    j["linear_section"] = vars;
  }
  return j;
}

Status regular_status(grmod::RegularVerdict v) {
  switch (v) {
    case grmod::RegularVerdict::regular_certified:
      return Status::verified;
    case grmod::RegularVerdict::not_regular:
      return Status::refuted;
    case grmod::RegularVerdict::inconclusive:
      return Status::inconclusive;
  }
  return Status::inconclusive;
}

// -- parameters ------------------------------------------------------------

struct CommandSpec {
  std::string name;
  std::vector<std::string> params;
};

const std::vector<CommandSpec>& specs() {
  static const std::vector<CommandSpec> all = {
      {"hf-local", {"module", "n_max", "expect"}},
      {"hf-semigroup", {"semigroup", "generators", "n_max", "expect"}},
      {"gr-verify", {"graded", "n_max"}},
      {"gr-socle", {"graded", "max_degree"}},
      {"gr-regseq", {"graded", "forms", "check_to"}},
      {"mf-check", {"module"}},
      {"mf-resolve", {"module", "length"}},
      {"betti", {"module", "length"}},
      {"cx", {"module", "length"}},
      {"eis-lift", {"module", "length"}},
      {"eis-ops", {"module", "length", "sequence"}},
      {"eis-basechange", {"module", "length", "alpha", "seed"}},
      {"eis-ext", {"module", "length", "window"}},
      {"eis-param", {"module", "length", "window", "max_attempts"}},
      {"reduce-strict", {"module", "truncation", "window"}},
      {"scan-semigroups",
       {"min_embdim", "max_embdim", "max_multiplicity", "max_frobenius", "candidates"}},
      {"verify-presentation", {"semigroup", "generators", "n_max"}},
  };
  return all;
}

class Params {
 public:
  Params(const Command& c, const LoadedJob& loaded)
      : cmd_(c),
        job_(loaded.job),
        reader_(loaded.has_source ? &loaded.source : nullptr),
        base_pointer_("/commands/" + std::to_string(c.index)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    reader_.fail(key.empty() ? base_pointer_ : pointer_child(base_pointer_, key), message);
  }

  void check_known(const std::vector<std::string>& known) const {
    for (const auto& [key, v] : cmd_.params.items())
      if (std::find(known.begin(), known.end(), key) == known.end())
        fail(key, "\"" + cmd_.name + "\" does not take \"" + key + "\"");
  }

  bool has(const std::string& key) const { return cmd_.params.contains(key); }
  const Json& raw(const std::string& key) const { return cmd_.params[key]; }
  std::string at(const std::string& key) const { return pointer_child(base_pointer_, key); }
  const Reader& reader() const { return reader_; }
  const Job& job() const { return job_; }

  std::uint64_t uint(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? reader_.unsigned_at(raw(key), at(key)) : fallback;
  }

  std::uint64_t uint_in(const std::string& key, std::uint64_t fallback, std::uint64_t lo,
                        std::uint64_t hi) const {
    const auto v = uint(key, fallback);
    if (v < lo || v > hi)
      fail(has(key) ? key : "", key + " = " + std::to_string(v) + " is outside " +
                                    std::to_string(lo) + ".." + std::to_string(hi));
    return v;
  }

  const locring::QuotientPresentation& base() const {
    if (!job_.base) fail("", "\"" + cmd_.name + "\" needs a \"ring\"");
    return *job_.base;
  }

  const NamedModule& module() const {
    if (has("module")) {
      const auto name = reader_.string_at(raw("module"), at("module"));
      if (const auto* m = job_.module(name)) return *m;
      fail("module", "no module named \"" + name + "\"");
    }
    if (job_.modules.size() == 1) return job_.modules.front();
    fail("", job_.modules.empty() ? "\"" + cmd_.name + "\" needs a module"
                                  : "several modules declared; name one with \"module\"");
  }

  const NamedGraded& graded() const {
    if (has("graded")) {
      const auto name = reader_.string_at(raw("graded"), at("graded"));
      if (const auto* g = job_.graded_ring(name)) return *g;
      fail("graded", "no graded ring named \"" + name + "\"");
    }
    if (job_.graded.size() == 1) return job_.graded.front();
    fail("", job_.graded.empty() ? "\"" + cmd_.name + "\" needs a graded ring"
                                 : "several graded rings declared; name one with \"graded\"");
  }

  std::vector<std::uint32_t> generators() const {
    if (has("generators") && has("semigroup")) fail("generators", "give either \"generators\" or \"semigroup\"");
    if (has("generators")) return reader_.generators_at(raw("generators"), at("generators"));
    if (has("semigroup")) {
      const auto name = reader_.string_at(raw("semigroup"), at("semigroup"));
      if (const auto* s = job_.semigroup(name)) return s->generators;
      fail("semigroup", "no semigroup named \"" + name + "\"");
    }
    if (job_.semigroups.size() == 1) return job_.semigroups.front().generators;
    fail("", job_.semigroups.empty() ? "\"" + cmd_.name + "\" needs a semigroup"
                                     : "several semigroups declared; name one with \"semigroup\"");
  }

  std::optional<std::vector<std::uint64_t>> expectation() const {
    if (!has("expect")) return std::nullopt;
    const auto& v = raw("expect");
    if (!v.is_array()) fail("expect", "expected an array of nonnegative integers");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(reader_.unsigned_at(v[i], pointer_child(at("expect"), i)));
    return out;
  }

  std::size_t length() const { return uint_in("length", job_.window, 1, 64); }

 private:
  const Command& cmd_;
  const Job& job_;
  Reader reader_;
  std::string base_pointer_;
};

Outcome compare_expectation(Outcome out, const HilbertVector& h,
                            const std::optional<std::vector<std::uint64_t>>& expect) {
  if (!expect) return out;
  out.data["expect"] = *expect;
  const std::size_t n = std::min(expect->size(), h.valid_to + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if ((*expect)[i] != h.values[i]) {
      out.status = Status::refuted;
      out.data["mismatch_degree"] = i;
      out.message = "H(" + std::to_string(i) + ") = " + std::to_string(h.values[i]) +
                    ", expected " + std::to_string((*expect)[i]);
      return out;
    }
  }
  if (expect->size() > h.valid_to + 1) {
    out.status = Status::inconclusive;
    out.message = "expectation reaches past valid_to = " + std::to_string(h.valid_to);
    return out;
  }
  out.status = Status::verified;
  out.message = "matches the expected Hilbert function";
  return out;
}

Json monotone_json(const HilbertVector& h) {
  const auto m = locring::monotonicity_report(h);
  Json j{{"nondecreasing", m.nondecreasing}};
  if (m.first_violation) j["first_violation"] = *m.first_violation;
  return j;
}

// -- local rings and semigroups --------------------------------------------

Task hf_local(const Params& p) {
  const auto& a = p.base();
  const std::optional<ModulePresentation> module =
      p.has("module") ? std::optional<ModulePresentation>(p.module().module) : std::nullopt;
  const auto n_max = static_cast<std::uint32_t>(p.uint("n_max", a.truncation() - 2));
  const auto expect = p.expectation();
  auto target = module.value_or(ModulePresentation::free(p.job().base, 1));
  return [target, n_max, expect] {
    const auto h = locring::hilbert_function(target, n_max);
    Outcome out;
    out.data = hf_json(h);
    out.data["monotonicity"] = monotone_json(h);
    out.message = "H(n) for n <= " + std::to_string(n_max);
    return compare_expectation(std::move(out), h, expect);
  };
}

Task hf_semigroup(const Params& p) {
  const auto gens = p.generators();
  const auto n_max = static_cast<std::uint32_t>(p.uint_in("n_max", 9, 0, 200));
  const auto expect = p.expectation();
  return [gens, n_max, expect] {
    const auto s = numsgp::semigroup_closure(gens);
    const auto h = numsgp::semigroup_hf(s, n_max);
    Outcome out;
    out.data["generators"] = s.generators;
    if (!s.redundant.empty()) out.data["redundant"] = s.redundant;
    out.data["frobenius"] = s.frobenius;
    out.data["multiplicity"] = s.multiplicity;
    out.data["gaps"] = s.gaps;
    out.data["apery"] = s.apery;
    out.data["hf"] = hf_json(h);
    out.data["monotonicity"] = monotone_json(h);
    out.message = "Frobenius number " + std::to_string(s.frobenius);
    if (!s.redundant.empty()) out.message += "; dropped redundant generators";
    return compare_expectation(std::move(out), h, expect);
  };
}

Task verify_presentation(const Params& p) {
  const auto& a = p.base();
  const auto gens = p.generators();
  if (gens.size() != a.nvars())
    p.fail(p.has("generators") ? "generators" : "", "need one ring variable per semigroup generator");
  const auto n_max = static_cast<std::uint32_t>(p.uint("n_max", a.truncation() - 2));
  const auto base = p.job().base;
  return [gens, n_max, base] {
    const auto r = numsgp::verify_presentation(gens, *base, n_max);
    Outcome out;
    out.status = r.verified ? Status::verified : Status::refuted;
    out.message = r.verified ? "relations vanish and Hilbert functions agree for n <= " +
                                   std::to_string(n_max)
                             : r.reason;
    if (r.failing_relation) out.data["failing_relation"] = *r.failing_relation;
    if (r.mismatch_degree) out.data["mismatch_degree"] = *r.mismatch_degree;
    out.data["semigroup_hf"] = hf_json(r.semigroup_hf);
    out.data["local_hf"] = hf_json(r.local_hf);
    return out;
  };
}

Task scan_semigroups(const Params& p) {
  numsgp::ScanConstraints c;
  c.min_embdim = static_cast<std::uint32_t>(p.uint_in("min_embdim", c.min_embdim, 1, 8));
  c.max_embdim = static_cast<std::uint32_t>(p.uint_in("max_embdim", c.max_embdim, c.min_embdim, 8));
  c.max_multiplicity =
      static_cast<std::uint32_t>(p.uint_in("max_multiplicity", c.max_multiplicity, 1, 64));
  c.max_frobenius = static_cast<std::uint32_t>(p.uint_in("max_frobenius", c.max_frobenius, 0, 1000));
  std::optional<std::vector<std::vector<std::uint32_t>>> candidates;
  if (p.has("candidates")) {
    const auto& v = p.raw("candidates");
    if (!v.is_array()) p.fail("candidates", "expected an array of generator lists");
    candidates.emplace();
    for (std::size_t i = 0; i < v.size(); ++i)
      candidates->push_back(p.reader().generators_at(v[i], pointer_child(p.at("candidates"), i)));
  }
  return [c, candidates] {
    const auto r = candidates ? numsgp::monotonicity_scan(*candidates) : numsgp::monotonicity_scan(c);
    const auto item = [](const numsgp::ScanItem& s) {
      Json j{{"generators", s.generators}, {"frobenius", s.frobenius}};
      j["hf"] = Json{{"H", s.hf}, {"valid_to", s.hf.empty() ? 0 : s.hf.size() - 1}};
      if (s.first_violation) j["first_violation"] = *s.first_violation;
      return j;
    };
    Outcome out;
    if (!candidates) {
      out.data["constraints"] = Json{{"min_embdim", c.min_embdim},
                                     {"max_embdim", c.max_embdim},
                                     {"max_multiplicity", c.max_multiplicity},
                                     {"max_frobenius", c.max_frobenius}};
    }
    out.data["scanned"] = r.scanned;
    out.data["embdim3_scanned"] = r.embdim3_scanned;
    out.data["embdim3_violations"] = r.embdim3_violations;
    Json violations = Json::array();
    for (const auto& s : r.violations) violations.push_back(item(s));
    out.data["violations"] = violations;
    if (candidates) {
      Json items = Json::array();
      for (const auto& s : r.items) items.push_back(item(s));
      out.data["items"] = items;
    }
    out.status = r.elias_consistent() ? Status::verified : Status::refuted;
    out.message = std::to_string(r.scanned) + " semigroups, " +
                  std::to_string(r.violations.size()) + " non-monotone, " +
                  std::to_string(r.embdim3_violations) + " of them with embedding dimension 3";
    return out;
  };
}

// -- graded rings ----------------------------------------------------------

Task gr_verify(const Params& p) {
  const auto& a = p.base();
  const auto& g = p.graded();
  if (g.ring.variables() != a.ring().variables)
    p.fail(p.has("graded") ? "graded" : "", "graded ring and ring use different variables");
  const auto n_max = static_cast<std::uint32_t>(p.uint("n_max", a.truncation() - 2));
  const auto base = p.job().base;
  const auto ring = g.ring;
  return [base, ring, n_max] {
    const auto r = grmod::verify_assoc_graded(*base, ring, n_max);
    const auto& names = ring.variables();
    Outcome out;
    out.status = r.verified ? Status::verified : Status::refuted;
    out.message = r.verified ? "initial forms witnessed and H(A,n) = dim G_n for n <= " +
                                   std::to_string(n_max)
                             : r.reason;
    if (r.mismatch_degree) out.data["mismatch_degree"] = *r.mismatch_degree;
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) {
      witnesses.push_back(Json{{"generator", ring.generators()[w.generator].to_string(names)},
                               {"element", w.element.to_string(names)},
                               {"coefficients", polys(w.coefficients, names)}});
    }
    out.data["witnesses"] = witnesses;
    out.data["local_hf"] = hf_json(r.local_hf);
    out.data["graded_hf"] = hf_json(r.graded_hf);
    return out;
  };
}

Task gr_socle(const Params& p) {
  const auto& g = p.graded();
  const auto max_degree = static_cast<std::uint32_t>(p.uint_in("max_degree", g.ring.degree_bound(), 0, 64));
  const auto ring = g.ring;
  return [ring, max_degree] {
    const auto s = grmod::socle_witness(ring, max_degree);
    const auto& names = ring.variables();
    Outcome out;
    out.data["searched_to"] = s.searched_to;
    if (!s.certificate) {
      out.status = Status::inconclusive;
      out.message = "no socle element in degrees <= " + std::to_string(s.searched_to);
      return out;
    }
    const auto& c = *s.certificate;
    out.status = Status::verified;
    out.message = "depth 0: " + c.element.to_string(names) + " in degree " +
                  std::to_string(c.degree) + " is killed by every variable";
    out.data["element"] = c.element.to_string(names);
    out.data["degree"] = c.degree;
    Json checks = Json::array();
    for (const auto& a : c.checks) {
      checks.push_back(Json{{"variable", names[a.variable]},
                            {"product", a.product.to_string(names)},
                            {"coefficients", polys(a.coefficients, names)}});
    }
    out.data["checks"] = checks;
    return out;
  };
}

std::uint32_t required_check(const std::vector<Polynomial>& forms) {
  std::uint32_t r = 1;
  for (const auto& f : forms) r += *f.max_degree() - 1;
  return r;
}

Task gr_regseq(const Params& p) {
  std::vector<std::string> names;
  std::vector<Polynomial> forms;
  FieldSpec field = p.job().field;
  if (p.has("graded") || (!p.job().graded.empty() && !p.job().base)) {
    names = p.graded().ring.variables();
  } else {
    names = p.base().ring().variables;
  }
  const locring::RingSpec r{names, 2, field};
  if (p.has("forms")) {
    const auto& v = p.raw("forms");
    if (!v.is_array() || v.empty()) p.fail("forms", "expected a nonempty array of forms");
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto at = pointer_child(p.at("forms"), i);
      auto f = p.reader().polynomial_at(r, v[i], at);
      if (f.is_zero() || !f.is_homogeneous() || *f.ord() == 0)
        p.reader().fail(at, "expected a nonzero form of positive degree");
      forms.push_back(std::move(f));
    }
  } else {
    if (!p.job().base || p.job().base->relations().empty())
      p.fail("", "give \"forms\" or declare relations");
    for (const auto& f : p.base().relations()) {
      if (f.is_zero()) p.fail("", "zero relation");
      forms.push_back(f.initial_form());
    }
  }
  const auto check_to = static_cast<std::uint32_t>(p.uint_in("check_to", required_check(forms), 0, 64));
  return [names, field, forms, check_to] {
    const auto r = grmod::regular_sequence_test(names, field, forms, check_to);
    Outcome out;
    out.status = regular_status(r.verdict);
    out.data = regular_json(r, names);
    out.data["forms"] = polys(forms, names);
    out.message = grmod::to_string(r.verdict);
    if (r.witness_degree) out.message += " (Hilbert functions differ in degree " + std::to_string(*r.witness_degree) + ")";
    return out;
  };
}

// -- matrix factorizations and resolutions ---------------------------------

const homalg::MatrixFactorization& factorization_of(const Params& p) {
  const auto& m = p.module();
  if (!m.factorization) p.fail(p.has("module") ? "module" : "", "module \"" + m.name + "\" is not a matrix factorization");
  return *m.factorization;
}

Task mf_check(const Params& p) {
  const auto mf = factorization_of(p);
  return [mf] {
    homalg::mf_verify(mf);
    Outcome out;
    out.status = Status::verified;
    out.message = "phi psi = psi phi = f I exactly";
    out.data["f"] = mf.f.to_string(mf.ring.variables);
    out.data["size"] = mf.phi.rows();
    return out;
  };
}

Task mf_resolve(const Params& p) {
  const auto mf = factorization_of(p);
  const auto length = p.length();
  return [mf, length] {
    const auto c = homalg::mf_resolution(mf, length);
    Outcome out;
    Json ds = Json::array();
    for (const auto& d : c.differentials) ds.push_back(grid(d, mf.ring.variables));
    out.data["differentials"] = ds;
    out.data["exact"] = true;
    out.status = c.first_nonvanishing_composite() ? Status::refuted : Status::ok;
    out.message = "2-periodic resolution of coker phi, length " + std::to_string(length);
    return out;
  };
}

homalg::FreeComplex complex_of(const NamedModule& m, std::size_t length) {
  if (m.factorization) return homalg::mf_resolution(*m.factorization, length);
  return homalg::resolution_complex(m.module, length, m.module.over().truncation());
}

Json complex_json(const homalg::FreeComplex& c) {
  const auto& names = c.over->ring().variables;
  Json ds = Json::array();
  Json precision = Json::array();
  for (std::size_t i = 1; i <= c.length(); ++i) {
    ds.push_back(grid(c.d(i), names));
    precision.push_back(c.precision_of(i));
  }
  return Json{{"differentials", ds}, {"valid_to", precision}};
}

Task betti(const Params& p) {
  const auto m = p.module().module;
  const auto length = p.length();
  return [m, length] {
    const auto b = homalg::betti_table(m, length, m.over().truncation());
    Outcome out;
    out.data = betti_json(b);
    out.message = "Betti numbers certified to i = " + std::to_string(b.certified_to);
    return out;
  };
}

Task cx(const Params& p) {
  const auto m = p.module().module;
  const auto length = p.has("length") ? p.length() : std::max<std::size_t>(p.job().window, 7);
  return [m, length] {
    const auto b = homalg::betti_table(m, length, m.over().truncation());
    const auto c = homalg::complexity_estimate(b);
    Outcome out;
    out.data["betti"] = betti_json(b);
    out.data["cx_upper_evidence"] = c.cx_upper_evidence;
    out.data["bounded"] = c.bounded;
    out.data["window"] = c.window;
    out.data["evidence"] = "growth of beta_0..beta_" + std::to_string(c.window - 1);
    out.message = "complexity evidence " + std::to_string(c.cx_upper_evidence);
    return out;
  };
}

// -- Eisenbud operators ----------------------------------------------------

Json family_json(const eisops::OperatorFamily& t, const std::vector<std::string>& names) {
  Json ops = Json::array();
  for (std::size_t i = 2; i <= t.top(); ++i) {
    for (std::size_t j = 0; j < t.count(); ++j)
      ops.push_back(Json{{"j", j + 1}, {"i", i}, {"matrix", grid(t.t(j, i), names)}});
  }
  Json bounds = Json::array();
  for (auto b : t.bounds) bounds.push_back(b);
  return Json{{"sequence", polys(t.sequence, names)}, {"valid_to", bounds}, {"operators", ops}};
}

Outcome identity_outcome(const eisops::LiftedComplex& lifted, const eisops::OperatorFamily& t,
                         const std::vector<std::string>& names) {
  const auto check = eisops::check_identity(lifted, t);
  Outcome out;
  out.data["operators"] = family_json(t, names);
  out.data["identity_exact"] = check.exact;
  if (check.failure) {
    out.status = Status::refuted;
    out.data["identity_failure"] = *check.failure;
    out.message = "sum f_j t_j differs from d^2 at F_" + std::to_string(*check.failure);
  } else {
    out.status = Status::verified;
    out.message = check.exact ? "sum f_j t_j = d^2 exactly"
                              : "sum f_j t_j = d^2 modulo n^bound at every index";
  }
  return out;
}

Task eis_lift(const Params& p) {
  const auto m = p.module();
  const auto length = p.length();
  return [m, length] {
    const auto c = complex_of(m, length);
    const auto lifted = eisops::lift_complex(c);
    const auto mismatch = eisops::reduction_mismatch(lifted, c);
    Outcome out;
    homalg::FreeComplex shown{lifted.base, lifted.differentials, lifted.precision};
    out.data = complex_json(shown);
    if (mismatch) {
      out.status = Status::refuted;
      out.data["mismatch"] = *mismatch;
      out.message = "lift of d_" + std::to_string(*mismatch) + " does not reduce to d";
    } else {
      out.status = Status::verified;
      out.message = "every lifted differential reduces to the original";
    }
    return out;
  };
}

Task eis_ops(const Params& p) {
  const auto m = p.module();
  const auto length = p.length();
  std::optional<std::vector<Polynomial>> sequence;
  if (p.has("sequence")) {
    const auto& v = p.raw("sequence");
    const auto& ring = m.module.over().ring();
    if (!v.is_array() || v.empty()) p.fail("sequence", "expected a nonempty array of polynomials");
    sequence.emplace();
    for (std::size_t i = 0; i < v.size(); ++i)
      sequence->push_back(p.reader().polynomial_at(ring, v[i], pointer_child(p.at("sequence"), i)));
  }
  return [m, length, sequence] {
    const auto c = complex_of(m, length);
    const auto lifted = eisops::lift_complex(c);
    const auto t = sequence ? eisops::solve_operators(lifted, *sequence) : eisops::solve_operators(lifted);
    return identity_outcome(lifted, t, c.over->ring().variables);
  };
}

eisops::CoefficientMatrix random_alpha(FieldSpec field, std::size_t c, std::size_t nvars,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ExactMatrix a(field, c, c);
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        const auto x = field.is_prime_field()
                           ? static_cast<long long>(rng() % field.characteristic())
                           : static_cast<long long>(rng() % 7) - 3;
        a(i, j) = field.from_int(x);
      }
    }
    if (!exactla::determinant(a).is_zero()) return eisops::CoefficientMatrix::constant(a, nvars);
  }
  throw Error(Errc::search_exhausted, "no invertible coefficient matrix after 1000 draws");
}

Task eis_basechange(const Params& p) {
  const auto m = p.module();
  const auto length = p.length();
  const auto& ring = m.module.over().ring();
  const std::size_t c = m.module.over().relation_count();
  if (c == 0) p.fail("module", "the ring of \"" + m.name + "\" has no relations");
  std::optional<PolyMatrix> alpha;
  if (p.has("alpha")) {
    if (p.has("seed")) p.fail("seed", "give either \"alpha\" or \"seed\"");
    alpha = p.reader().matrix_at(ring, p.raw("alpha"), p.at("alpha"));
    if (alpha->rows() != c || alpha->cols() != c)
      p.fail("alpha", "alpha must be " + std::to_string(c) + " x " + std::to_string(c));
  }
  const auto seed = p.uint("seed", p.job().seed);
  return [m, length, alpha, seed, c] {
    const auto cx = complex_of(m, length);
    const auto& over = *cx.over;
    const auto& names = over.ring().variables;
    const auto a = alpha ? eisops::CoefficientMatrix(*alpha)
                         : random_alpha(over.field(), c, over.nvars(), seed);
    const auto lifted = eisops::lift_complex(cx);
    const auto t = eisops::solve_operators(lifted);
    const auto moved = eisops::base_change_operators(lifted, a, t);
    auto out = identity_outcome(lifted, moved, names);
    out.data["alpha"] = grid(a.matrix(), names);
    if (!alpha) out.data["seed"] = seed;
    out.data["g"] = polys(moved.sequence, names);
    if (out.status == Status::verified) out.message = "base change: " + out.message;
    return out;
  };
}

Json ext_json(const eisops::ExtModule& e) {
  Json action = Json::array();
  for (std::size_t j = 0; j < e.operator_count(); ++j) {
    for (std::size_t i = 0; i < e.action[j].size(); ++i)
      action.push_back(Json{{"j", j + 1}, {"i", i}, {"matrix", grid(e.T(j, i))}});
  }
  return Json{{"dims", e.dims}, {"valid_to", e.top()}, {"action", action}};
}

eisops::ExtModule ext_of(const NamedModule& m, std::size_t length) {
  const auto c = complex_of(m, length);
  const auto lifted = eisops::lift_complex(c);
  return eisops::ext_action(c, eisops::solve_operators(lifted));
}

Task eis_ext(const Params& p) {
  const auto m = p.module();
  const auto length = p.length();
  const std::optional<std::size_t> window =
      p.has("window") ? std::optional<std::size_t>(p.uint_in("window", 0, 0, 64)) : std::nullopt;
  return [m, length, window] {
    const auto e = ext_of(m, length);
    Outcome out;
    out.data["ext"] = ext_json(e);
    if (const auto f = eisops::first_noncommuting(e)) {
      out.status = Status::inconclusive;
      out.message = "T_" + std::to_string(f->a + 1) + " and T_" + std::to_string(f->b + 1) +
                    " do not commute on Ext^" + std::to_string(f->degree);
      return out;
    }
    out.data["commuting"] = true;
    const auto g = eisops::finite_generation_window(e, window.value_or(e.top()));
    Json fg{{"window", g.window}, {"new_generators", g.new_generators}, {"stable", g.stable}};
    if (g.last_new_degree) fg["last_new_degree"] = *g.last_new_degree;
    fg["evidence"] = "no new generators near the end of the window";
    out.data["finite_generation"] = fg;
    out.status = Status::verified;
    out.message = "operators commute on Ext^0..Ext^" + std::to_string(e.top());
    if (!g.stable) out.message += "; generation not stable in the window";
    return out;
  };
}

Task eis_param(const Params& p) {
  const auto m = p.module();
  const auto length = p.length();
  const std::optional<std::size_t> window =
      p.has("window") ? std::optional<std::size_t>(p.uint_in("window", 0, 0, 64)) : std::nullopt;
  const auto max_attempts = p.uint_in("max_attempts", 100000, 1, 10000000);
  return [m, length, window, max_attempts] {
    const auto e = ext_of(m, length);
    const auto x = eisops::parameter_search(e, window.value_or(e.top()), max_attempts);
    Outcome out;
    Json coeffs = Json::array();
    for (const auto& s : x.coefficients) coeffs.push_back(s.to_string());
    out.data["coefficients"] = coeffs;
    out.data["from"] = x.from;
    out.data["certified_to"] = x.to;
    out.data["attempts"] = x.attempts;
    out.data["evidence"] = "xi bijective on Ext^i for i in the window only";
    out.status = Status::ok;
    out.message = "parameter found after " + std::to_string(x.attempts) + " attempts";
    return out;
  };
}

Task reduce_strict(const Params& p) {
  const auto& nm = p.module();
  if (nm.factorization) p.fail(p.has("module") ? "module" : "", "reduce-strict needs a module over the job ring");
  const auto m = nm.module;
  eisops::StrictOptions o;
  o.truncation = static_cast<std::uint32_t>(p.uint_in("truncation", m.over().truncation(), 4, 64));
  o.window = p.uint_in("window", std::max<std::size_t>(p.job().window, 5), 4, 32);
  return [m, o] {
    const auto r = eisops::strict_reduction(m, o);
    const auto& names = m.over().ring().variables;
    Outcome out;
    out.data["order"] = r.order;
    Json xi = Json::array();
    for (const auto& s : r.xi.coefficients) xi.push_back(s.to_string());
    out.data["xi"] = xi;
    out.data["g"] = polys(r.g, names);
    out.data["g_star"] = polys(r.g_star, names);
    out.data["p_relations"] = polys(r.p->relations(), names);
    const auto& rep = r.report;
    out.data["round_trip"] = rep.round_trip;
    out.data["initial_forms_match"] = rep.initial_forms_match;
    out.data["tail_regular"] = regular_json(rep.tail_regular, names);
    out.data["betti_over_p"] = betti_json(rep.betti_over_p);
    out.data["pd_at_most_one"] = rep.pd_at_most_one;
    out.data["dim_p"] = rep.dim_p;
    out.status = rep.holds() ? Status::verified : Status::refuted;
    std::string p_text;
    for (const auto& g : r.p->relations()) p_text += (p_text.empty() ? "" : ", ") + g.to_string(names);
    out.message = "P = Q/(" + p_text + ")";
    if (!rep.holds()) out.message += "; report checks failed";
    return out;
  };
}

using Preparer = Task (*)(const Params&);

const std::map<std::string, Preparer>& preparers() {
  static const std::map<std::string, Preparer> all = {
      {"hf-local", hf_local},
      {"hf-semigroup", hf_semigroup},
      {"gr-verify", gr_verify},
      {"gr-socle", gr_socle},
      {"gr-regseq", gr_regseq},
      {"mf-check", mf_check},
      {"mf-resolve", mf_resolve},
      {"betti", betti},
      {"cx", cx},
      {"eis-lift", eis_lift},
      {"eis-ops", eis_ops},
      {"eis-basechange", eis_basechange},
      {"eis-ext", eis_ext},
      {"eis-param", eis_param},
      {"reduce-strict", reduce_strict},
      {"scan-semigroups", scan_semigroups},
      {"verify-presentation", verify_presentation},
  };
  return all;
}

Result run_one(const PreparedCommand& c) {
  Result r;
  r.index = c.command.index;
  r.command = c.command.name;
  try {
    auto out = c.task();
    r.status = out.status;
    r.message = std::move(out.message);
    r.data = std::move(out.data);
  } catch (const Error& e) {
    r.status = status_for(e.code());
    r.message = std::string(to_string(e.code())) + ": " + e.what();
    r.data = Json{{"error", to_string(e.code())}};
  }
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : specs()) out.push_back(s.name);
    return out;
  }();
  return names;
}

const std::vector<std::string>& command_parameters(const std::string& name) {
  for (const auto& s : specs())
    if (s.name == name) return s.params;
  throw Error(Errc::invalid_input, "unknown command \"" + name + "\"");
}

std::vector<PreparedCommand> prepare(const LoadedJob& loaded) {
  std::vector<PreparedCommand> out;
  const Reader reader(loaded.has_source ? &loaded.source : nullptr);
  for (const auto& c : loaded.job.commands) {
    const auto it = preparers().find(c.name);
    if (it == preparers().end())
      reader.fail("/commands/" + std::to_string(c.index) + "/command", "unknown command \"" + c.name + "\"");
    const Params p(c, loaded);
    p.check_known(command_parameters(c.name));
    out.push_back({c, it->second(p)});
  }
  return out;
}

Report execute(const std::vector<PreparedCommand>& commands, unsigned jobs) {
  Report report;
  report.results.resize(commands.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(commands.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < commands.size(); ++i) report.results[i] = run_one(commands[i]);
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < commands.size(); i = next++)
        report.results[i] = run_one(commands[i]);
    }));
  }
  for (auto& w : workers) w.get();
  return report;
}

Report run(const LoadedJob& loaded, unsigned jobs) { return execute(prepare(loaded), jobs); }

}  // namespace lochf::cli
