#include "lochf/grmod/graded.hpp"

#include <algorithm>
#include <map>

#include "lochf/error.hpp"
#include "lochf/exactla/matrix.hpp"
#include "lochf/locring/expression.hpp"
#include "lochf/locring/span.hpp"

namespace lochf::grmod {
namespace {

using exactla::EchelonForm;
using exactla::Index;
using exactla::SparseVector;
using locring::MonomialTable;

std::uint32_t form_degree(const Polynomial& h) {
  if (h.is_zero() || !h.is_homogeneous()) {
    throw Error(Errc::invalid_input, "graded generators must be nonzero homogeneous forms");
  }
  return *h.ord();
}

// Coefficients q_i with sum q_i h_i equal to the vector whose tracked
// combination is `combination` inside `piece`.
std::vector<Polynomial> decode_piece_combination(const GradedQuotient& g,
                                                 const DegreePiece& piece,
                                                 const SparseVector& combination) {
  std::vector<Polynomial> q(g.generators().size(), Polynomial(g.field(), g.nvars()));
  const std::size_t stride = piece.size();
  for (const auto& e : combination.entries()) {
    const std::size_t i = e.index / stride;
    const std::size_t k = e.index % stride;
    const std::uint32_t a = *g.generators()[i].ord();
    q[i].add_term((*piece.table)[piece.table->offset(piece.degree - a) + k], e.value);
  }
  return q;
}

Polynomial combine(const std::vector<Polynomial>& q, const std::vector<Polynomial>& h,
                   FieldSpec field, std::size_t nvars) {
  Polynomial sum(field, nvars);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!q[i].is_zero()) sum += q[i] * h[i];
  }
  return sum;
}

std::vector<std::int64_t> ci_series(std::size_t m, const std::vector<std::uint32_t>& degrees,
                                    std::uint32_t n_max) {
  // numerator prod (1 - t^a), then divide by (1 - t) m times (partial sums)
  std::vector<std::int64_t> c(n_max + 1, 0);
  c[0] = 1;
  for (auto a : degrees) {
    for (std::int64_t d = n_max; d >= static_cast<std::int64_t>(a); --d) c[d] -= c[d - a];
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::uint32_t d = 1; d <= n_max; ++d) c[d] += c[d - 1];
  }
  return c;
}

}  // namespace

GradedQuotient::GradedQuotient(std::vector<std::string> variables, FieldSpec field,
                               std::vector<Polynomial> generators, std::uint32_t degree_bound)
    : variables_(std::move(variables)),
      field_(field),
      generators_(std::move(generators)),
      degree_bound_(degree_bound) {
  locring::RingSpec{variables_, 2, field_}.validate();
  for (const auto& h : generators_) {
    if (h.nvars() != variables_.size() || !(h.field() == field_)) {
      throw Error(Errc::invalid_input, "generator does not live in the graded ring");
    }
    if (form_degree(h) < 1) {
      throw Error(Errc::invalid_input, "graded generators must have positive degree");
    }
  }
}

GradedQuotient GradedQuotient::parse(std::vector<std::string> variables, FieldSpec field,
                                     const std::vector<std::string>& generators,
                                     std::uint32_t degree_bound) {
  std::vector<Polynomial> polys;
  for (const auto& text : generators) {
    polys.push_back(locring::parse_polynomial(text, variables, field));
  }
  return GradedQuotient(std::move(variables), field, std::move(polys), degree_bound);
}

bool GradedQuotient::is_monomial() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const Polynomial& h) { return h.term_count() == 1; });
}

GradedQuotient GradedQuotient::with_generators(std::vector<Polynomial> extra) const {
  auto gens = generators_;
  for (auto& h : extra) gens.push_back(std::move(h));
  return GradedQuotient(variables_, field_, std::move(gens), degree_bound_);
}

SparseVector DegreePiece::coordinates(const Polynomial& homogeneous) const {
  std::vector<exactla::SparseEntry> entries;
  const std::size_t base = table->offset(degree);
  for (const auto& [m, c] : homogeneous.terms()) {
    if (m.degree() != degree) {
      throw Error(Errc::invalid_input, "expected a form of degree " + std::to_string(degree));
    }
    entries.push_back({static_cast<Index>(table->index_of(m) - base), c});
  }
  return SparseVector::from_entries(std::move(entries));
}

Polynomial DegreePiece::polynomial(const SparseVector& v, FieldSpec field) const {
  Polynomial p(field, table->nvars());
  for (const auto& e : v.entries()) p.add_term(monomial(e.index), e.value);
  return p;
}

std::vector<std::size_t> DegreePiece::standard_columns() const {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < size(); ++c) {
    if (!ideal.is_pivot(static_cast<Index>(c))) cols.push_back(c);
  }
  return cols;
}

DegreePiece degree_piece(const GradedQuotient& g, std::uint32_t d,
                         std::shared_ptr<const MonomialTable> table, bool track) {
  if (table->bound() <= d) {
    throw Error(Errc::precision_exceeded, "monomial table does not reach degree " +
                                              std::to_string(d));
  }
  DegreePiece piece{d, table, EchelonForm(g.field(), static_cast<Index>(table->count(d)), track)};
  const std::size_t stride = piece.size();
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    const auto& h = g.generators()[i];
    const std::uint32_t a = *h.ord();
    if (a > d) continue;
    const std::size_t first = table->offset(d - a);
    for (std::size_t k = 0; k < table->count(d - a); ++k) {
      piece.ideal.insert(piece.coordinates(h.times_monomial((*table)[first + k])),
                         static_cast<Index>(i * stride + k));
    }
  }
  return piece;
}

HilbertVector graded_hf(const GradedQuotient& g, std::uint32_t n_max) {
  const auto table = locring::shared_table(g.nvars(), n_max + 1);
  HilbertVector h;
  for (std::uint32_t d = 0; d <= n_max; ++d) {
    const auto piece = degree_piece(g, d, table);
    h.values.push_back(piece.size() - piece.ideal.rank());
  }
  h.valid_to = n_max;
  return h;
}

AssocGradedResult verify_assoc_graded(const locring::QuotientPresentation& a,
                                      const GradedQuotient& g, std::uint32_t n_max) {
  const std::uint32_t big_d = a.truncation();
  if (n_max + 1 > big_d) {
    throw Error(Errc::precision_exceeded, "window " + std::to_string(n_max) +
                                              " needs D > " + std::to_string(n_max) +
                                              ", have D = " + std::to_string(big_d));
  }
  if (g.nvars() != a.nvars() || !(g.field() == a.field())) {
    throw Error(Errc::invalid_input, "candidate and ring use different variables or fields");
  }

  AssocGradedResult result;
  auto shared = std::make_shared<const locring::QuotientPresentation>(a);
  result.local_hf = locring::hilbert_function(locring::ModulePresentation::free(shared, 1), n_max);
  result.graded_hf = graded_hf(g, n_max);

  std::optional<std::uint32_t> hf_mismatch;
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    if (result.local_hf.values[n] != result.graded_hf.values[n]) {
      hf_mismatch = n;
      break;
    }
  }

  std::vector<std::vector<Polynomial>> relations;
  for (const auto& f : a.relations()) relations.push_back({f});

  std::optional<std::uint32_t> member_mismatch;
  std::map<std::uint32_t, std::pair<locring::ModuleCoordinates, EchelonForm>> spans;
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    const auto& h = g.generators()[gi];
    const std::uint32_t d = *h.ord();
    if (d + 1 > big_d) {
      throw Error(Errc::precision_exceeded, "generator degree " + std::to_string(d) +
                                                " is beyond the truncation order");
    }
    auto it = spans.find(d);
    if (it == spans.end()) {
      locring::ModuleCoordinates coords(locring::shared_table(a.nvars(), d + 1), 1);
      auto echelon = locring::submodule_span(coords, relations, a.field(), true);
      it = spans.emplace(d, std::make_pair(std::move(coords), std::move(echelon))).first;
    }
    const auto& [coords, echelon] = it->second;

    // initial forms of degree d: degree-d parts of rows whose pivot has degree d
    const Index first = coords.first_of_degree(d);
    EchelonForm initial(a.field(), static_cast<Index>(coords.table().count(d)), true);
    for (std::size_t r = 0; r < echelon.rank(); ++r) {
      const auto& row = echelon.row(r);
      if (row.front().index < first) continue;
      std::vector<exactla::SparseEntry> part;
      for (const auto& e : row.entries()) part.push_back({e.index - first, e.value});
      initial.insert(SparseVector::from_entries(std::move(part)), static_cast<Index>(r));
    }
    std::vector<exactla::SparseEntry> target;
    for (const auto& [m, c] : h.terms()) {
      target.push_back({static_cast<Index>(coords.table().index_of(m) - coords.table().offset(d)), c});
    }
    const auto x = initial.express(SparseVector::from_entries(std::move(target)));
    if (!x.residue.empty()) {
      if (!member_mismatch || d < *member_mismatch) member_mismatch = d;
      continue;
    }
    SparseVector combo;
    for (const auto& e : x.combination.entries()) {
      combo.add_scaled(e.value, echelon.row_combination(e.index));
    }
    InitialFormWitness w{gi, locring::combination_coefficients(coords, combo, relations.size(), a.field()),
                         Polynomial(a.field(), a.nvars())};
    w.element = combine(w.coefficients, a.relations(), a.field(), a.nvars());
    if (w.element.is_zero() || !(w.element.initial_form() == h)) {
      throw std::logic_error("initial form witness failed its exact check");
    }
    result.witnesses.push_back(std::move(w));
  }

  if (member_mismatch && (!hf_mismatch || *member_mismatch <= *hf_mismatch)) {
    result.mismatch_degree = member_mismatch;
    result.reason = "candidate generator of degree " + std::to_string(*member_mismatch) +
                    " is not an initial form of the ideal";
  } else if (hf_mismatch) {
    result.mismatch_degree = hf_mismatch;
    result.reason = "Hilbert functions differ in degree " + std::to_string(*hf_mismatch) + ": " +
                    std::to_string(result.local_hf.values[*hf_mismatch]) + " vs " +
                    std::to_string(result.graded_hf.values[*hf_mismatch]);
  }
  result.verified = !result.mismatch_degree.has_value();
  return result;
}

SocleSearch socle_witness(const GradedQuotient& g, std::uint32_t max_degree) {
  const auto table = locring::shared_table(g.nvars(), max_degree + 2);
  const FieldSpec field = g.field();
  const std::size_t m = g.nvars();
  auto current = degree_piece(g, 0, table);
  for (std::uint32_t d = 0; d <= max_degree; ++d) {
    auto next = degree_piece(g, d + 1, table, true);
    const auto standard = current.standard_columns();
    if (!standard.empty()) {
      const std::size_t width = next.size();
      exactla::ExactMatrix action(field, m * width, standard.size());
      for (std::size_t s = 0; s < standard.size(); ++s) {
        for (std::size_t v = 0; v < m; ++v) {
          const auto product = current.monomial(standard[s]) * Monomial::variable(m, v);
          const auto normal = next.ideal.reduce(
              SparseVector::unit(static_cast<Index>(table->index_of(product) - table->offset(d + 1)),
                                 field.one()));
          for (const auto& e : normal.entries()) action(v * width + e.index, s) = e.value;
        }
      }
      const auto kernel = exactla::kernel_basis(action);
      if (!kernel.empty()) {
        SocleCertificate cert{Polynomial(field, m), d, {}};
        for (std::size_t s = 0; s < standard.size(); ++s) {
          cert.element.add_term(current.monomial(standard[s]), kernel.front()[s]);
        }
        for (std::size_t v = 0; v < m; ++v) {
          AnnihilationCheck check{v, cert.element * Polynomial::variable(field, m, v), {}};
          const auto x = next.ideal.express(next.coordinates(check.product));
          if (!x.residue.empty()) throw std::logic_error("socle element is not annihilated");
          check.coefficients = decode_piece_combination(g, next, x.combination);
          if (!(combine(check.coefficients, g.generators(), field, m) == check.product)) {
            throw std::logic_error("annihilation witness failed its exact check");
          }
          cert.checks.push_back(std::move(check));
        }
        return {std::move(cert), d};
      }
    }
    current = std::move(next);
  }
  return {std::nullopt, max_degree};
}

RegularSequenceResult regular_sequence_test(const std::vector<std::string>& variables,
                                            FieldSpec field,
                                            const std::vector<Polynomial>& forms,
                                            std::uint32_t check_to) {
  std::vector<std::uint32_t> degrees;
  for (const auto& h : forms) degrees.push_back(form_degree(h));
  const GradedQuotient g(variables, field, forms);
  const std::size_t m = variables.size();

  RegularSequenceResult r;
  r.required_check_to = 1;
  for (auto a : degrees) r.required_check_to += a - 1;
  const auto hf = graded_hf(g, check_to);
  r.hf.assign(hf.values.begin(), hf.values.end());
  r.series = ci_series(m, degrees, check_to);
  for (std::uint32_t n = 0; n <= check_to; ++n) {
    if (r.hf[n] != r.series[n]) {
      r.verdict = RegularVerdict::not_regular;
      r.witness_degree = n;
      return r;
    }
  }
  if (check_to < r.required_check_to) {
    r.verdict = RegularVerdict::inconclusive;
    return r;
  }
  r.verdict = RegularVerdict::regular_certified;

  // Independent certificate: cut by m - c variables down to finite length.
  if (forms.size() <= m) {
    const std::size_t k = m - forms.size();
    const auto target = ci_series(m, [&] {
      auto all = degrees;
      all.insert(all.end(), k, 1u);
      return all;
    }(), r.required_check_to);
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::size_t> section;
      std::vector<Polynomial> extra;
      for (std::size_t v = 0; v < m; ++v) {
        if (!pick[v]) continue;
        section.push_back(v);
        extra.push_back(Polynomial::variable(field, m, v));
      }
      const auto cut = graded_hf(g.with_generators(std::move(extra)), r.required_check_to);
      if (std::equal(cut.values.begin(), cut.values.end(), target.begin(),
                     [](std::uint64_t a, std::int64_t b) { return static_cast<std::int64_t>(a) == b; })) {
        r.linear_section = std::move(section);
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return r;
}

std::string to_string(RegularVerdict v) {
  switch (v) {
    case RegularVerdict::regular_certified: return "RegularCertified";
    case RegularVerdict::not_regular: return "NotRegular";
    case RegularVerdict::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

}  // namespace lochf::grmod
