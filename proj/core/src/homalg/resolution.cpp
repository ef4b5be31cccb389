#include "lochf/homalg/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lochf/error.hpp"
#include "lochf/locring/span.hpp"

namespace lochf::homalg {
namespace {

using exactla::EchelonForm;
using exactla::Index;
using exactla::SparseVector;
using locring::ModuleCoordinates;
using Element = std::vector<Polynomial>;

Element zero_element(const QuotientPresentation& a, std::size_t rank) {
  return Element(rank, Polynomial(a.field(), a.nvars()));
}

// Inserts every monomial multiple of every generator that survives the
// truncation, untagged.
void insert_multiples(EchelonForm& e, const ModuleCoordinates& coords,
                      const std::vector<Element>& gens, std::uint32_t min_degree = 0) {
  const auto& table = coords.table();
  for (const auto& g : gens) {
    const auto o = locring::element_ord(g);
    if (!o || *o >= coords.bound()) continue;
    const std::size_t limit = table.offset(coords.bound() - *o);
    for (std::size_t mi = table.offset(std::min(min_degree, coords.bound())); mi < limit; ++mi) {
      auto v = coords.shifted(g, table[mi]);
      if (!v.empty()) e.insert(std::move(v));
    }
  }
}

std::vector<Element> ideal_multiples(const QuotientPresentation& a, std::size_t rank) {
  std::vector<Element> out;
  for (const auto& f : a.relations()) {
    for (std::size_t i = 0; i < rank; ++i) {
      auto e = zero_element(a, rank);
      e[i] = f;
      out.push_back(std::move(e));
    }
  }
  return out;
}

struct KernelStep {
  std::vector<Element> generators;
  std::uint32_t precision;
};

// Loss of precision when intersecting with U = span(images) + N inside
// F / n^p. Every minimal leading monomial m of U outside the leading
// module of N is reached from sources of degree tau(m) and above; an element
// of U in n^p then has image coefficients of order >= p - max(deg m - tau(m)).
std::uint32_t kernel_margin(const QuotientPresentation& a, const ModuleCoordinates& target,
                            const std::vector<Element>& extra, const std::vector<Element>& images) {
  EchelonForm u(a.field(), target.dimension());
  insert_multiples(u, target, ideal_multiples(a, target.rank()));
  insert_multiples(u, target, extra);
  const auto& table = target.table();
  const std::uint32_t p = target.bound();
  std::unordered_map<Index, std::uint32_t> layer;
  for (std::uint32_t t = p; t-- > 0;) {
    for (const auto& g : images) {
      const auto o = locring::element_ord(g);
      if (!o || *o + t >= p) continue;
      for (std::size_t mi = table.offset(t); mi < table.offset(t + 1); ++mi) {
        auto v = u.reduce(target.shifted(g, table[mi]));
        if (v.empty()) continue;
        layer.emplace(v.front().index, t);
        u.insert(std::move(v));
      }
    }
  }
  std::uint32_t margin = 0;
  for (const auto& [col, t] : layer) {
    const auto pos = target.position(col);
    const auto& m = table[pos.monomial];
    bool minimal = true;
    for (std::size_t v = 0; minimal && v < m.nvars(); ++v) {
      if (m[v] == 0) continue;
      std::vector<std::uint32_t> e(m.exponents().begin(), m.exponents().end());
      --e[v];
      minimal = !u.is_pivot(target.index(locring::Monomial(std::move(e)), pos.component));
    }
    if (minimal) margin = std::max(margin, m.degree() - t);
  }
  return margin;
}

// Minimal generators of K = {a in Q^s : sum a_j images_j in (f)F + extra},
// modulo n K + (f) Q^s, computed with the target known modulo n^p.
std::optional<KernelStep> kernel_step(const QuotientPresentation& a, std::size_t target_rank,
                                      const std::vector<Element>& extra,
                                      const std::vector<Element>& images, std::uint32_t p) {
  const std::size_t s = images.size();
  const ModuleCoordinates target(locring::shared_table(a.nvars(), p), target_rank);
  const std::uint32_t margin = kernel_margin(a, target, extra, images);
  const std::uint32_t cut = p > margin ? p - margin : 0;
  if (cut < 2) return std::nullopt;

  EchelonForm image_span(a.field(), target.dimension(), true);
  insert_multiples(image_span, target, ideal_multiples(a, target_rank));
  insert_multiples(image_span, target, extra);
  // sources of degree >= cut are modded out: kernel is taken modulo n^cut
  insert_multiples(image_span, target, images, cut);

  const ModuleCoordinates source(locring::shared_table(a.nvars(), cut), s);
  std::vector<SparseVector> kernel;
  for (Index col = 0; col < source.dimension(); ++col) {
    const auto pos = source.position(col);
    auto v = target.shifted(images[pos.component], source.table()[pos.monomial]);
    if (auto rel = image_span.insert(std::move(v), col)) kernel.push_back(std::move(*rel));
  }

  // W = n K + (f) Q^s
  EchelonForm w(a.field(), source.dimension());
  insert_multiples(w, source, ideal_multiples(a, s));
  std::vector<Element> kernel_elements;
  for (const auto& k : kernel) kernel_elements.push_back(source.from_sparse(k, a.field()));
  for (const auto& k : kernel_elements) {
    for (std::size_t v = 0; v < a.nvars(); ++v) {
      auto x = source.shifted(k, locring::Monomial::variable(a.nvars(), v));
      if (!x.empty()) w.insert(std::move(x));
    }
  }
  std::vector<SparseVector> accepted;
  for (const auto& k : kernel) {
    auto nf = w.reduce(k);
    if (nf.empty()) continue;
    w.insert(nf);
    accepted.push_back(std::move(nf));
  }
  std::stable_sort(accepted.begin(), accepted.end(),
                   [](const SparseVector& x, const SparseVector& y) {
                     return x.front().index < y.front().index;
                   });
  KernelStep out{{}, cut};
  for (const auto& g : accepted) out.generators.push_back(source.from_sparse(g, a.field()));
  return out;
}

PolyMatrix as_matrix(const QuotientPresentation& a, std::size_t rows,
                     const std::vector<Element>& columns) {
  PolyMatrix m(a.field(), a.nvars(), rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

std::vector<Element> columns_of(const PolyMatrix& m) {
  std::vector<Element> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

}  // namespace

void mf_verify(const MatrixFactorization& mf) {
  const auto n = mf.phi.rows();
  if (mf.phi.cols() != n || mf.psi.rows() != n || mf.psi.cols() != n) {
    throw Error(Errc::invalid_input, "matrix factorization needs square matrices of one size");
  }
  const auto check = [&](const PolyMatrix& product, const char* name) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Polynomial expected = i == j ? mf.f : Polynomial(mf.f.field(), mf.f.nvars());
        if (!(product(i, j) == expected)) {
          throw Error(Errc::not_a_factorization,
                      std::string(name) + " entry (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ") is " +
                          product(i, j).to_string(mf.ring.variables) + ", expected " +
                          expected.to_string(mf.ring.variables));
        }
      }
    }
  };
  check(mf.phi * mf.psi, "phi*psi");
  check(mf.psi * mf.phi, "psi*phi");
}

std::size_t FreeComplex::rank(std::size_t i) const {
  if (differentials.empty()) return 0;
  if (i == 0) return differentials.front().rows();
  if (i > differentials.size()) throw Error(Errc::invalid_input, "index past the complex");
  return differentials[i - 1].cols();
}

std::uint32_t FreeComplex::precision_of(std::size_t i) const {
  if (precision.empty()) return over->truncation();
  return std::min(precision.at(i - 1), over->truncation());
}

bool FreeComplex::is_minimal() const {
  return std::all_of(differentials.begin(), differentials.end(),
                     [](const PolyMatrix& m) { return m.entries_in_maximal_ideal(); });
}

std::optional<std::size_t> FreeComplex::first_nonvanishing_composite() const {
  const auto& a = *over;
  for (std::size_t i = 1; i < differentials.size(); ++i) {
    const std::uint32_t bound = precision_of(i);
    const auto product = PolyMatrix::truncated_product(d(i), d(i + 1), bound);
    const std::size_t rows = product.rows();
    const ModuleCoordinates coords(locring::shared_table(a.nvars(), bound), rows);
    EchelonForm ideal(a.field(), coords.dimension());
    insert_multiples(ideal, coords, ideal_multiples(a, rows));
    for (std::size_t j = 0; j < product.cols(); ++j) {
      if (!ideal.contains(coords.to_sparse(product.column(j)))) return i;
    }
  }
  return std::nullopt;
}

FreeComplex mf_resolution(const MatrixFactorization& mf, std::size_t n) {
  mf_verify(mf);
  FreeComplex c;
  c.over = std::make_shared<const QuotientPresentation>(mf.ring, std::vector<Polynomial>{mf.f});
  for (std::size_t i = 1; i <= n; ++i) c.differentials.push_back(i % 2 == 1 ? mf.phi : mf.psi);
  return c;
}

ResolutionRun minimal_resolution(const ModulePresentation& m, std::size_t n, std::uint32_t d) {
  const auto& a = m.over();
  const auto module = m.with_truncation(d);
  ResolutionRun run;
  const std::size_t r = m.rank();

  // minimal generators: components outside the degree-0 pivots
  const ModuleCoordinates coords(locring::shared_table(a.nvars(), 1), r);
  EchelonForm constant(a.field(), coords.dimension());
  insert_multiples(constant, coords, module.relation_generators());
  std::vector<Element> selected;
  for (std::size_t i = 0; i < r; ++i) {
    if (constant.is_pivot(static_cast<Index>(i))) continue;
    auto e = zero_element(a, r);
    e[i] = Polynomial::constant(a.field(), a.nvars(), a.field().one());
    selected.push_back(std::move(e));
  }
  run.betti.push_back(selected.size());

  std::vector<Element> extra = columns_of(module.matrix());
  std::vector<Element> images = std::move(selected);
  std::size_t target_rank = r;
  std::uint32_t precision = d;
  while (run.betti.size() <= n) {
    if (images.empty()) {
      run.betti.push_back(0);
      run.differentials.push_back(PolyMatrix(a.field(), a.nvars(), 0, 0));
      run.precision.push_back(precision);
      target_rank = 0;
      continue;
    }
    const auto step = kernel_step(a, target_rank, extra, images, precision);
    if (!step) {
      run.exhausted = true;
      break;
    }
    extra.clear();
    run.precision.push_back(step->precision);
    run.differentials.push_back(as_matrix(a, images.size(), step->generators));
    run.betti.push_back(step->generators.size());
    target_rank = images.size();
    images = step->generators;
    precision = step->precision;
  }
  return run;
}

PolyMatrix syzygy_step(const ModulePresentation& m, std::uint32_t d) {
  const auto lo = minimal_resolution(m, 2, d);
  const auto hi = minimal_resolution(m, 2, d + 2);
  if (lo.differentials.size() < 2) {
    throw Error(Errc::precision_exceeded, "truncation order too small for a syzygy step");
  }
  if (hi.betti.size() < 3 || lo.betti[1] != hi.betti[1] || lo.betti[2] != hi.betti[2]) {
    throw Error(Errc::precision_unstable, "syzygy generators differ between D = " +
                                              std::to_string(d) + " and D = " +
                                              std::to_string(d + 2));
  }
  return lo.differentials[1];
}

FreeComplex resolution_complex(const ModulePresentation& m, std::size_t n, std::uint32_t d) {
  auto run = minimal_resolution(m, n, d);
  FreeComplex c;
  c.over = std::make_shared<const QuotientPresentation>(m.over().with_truncation(d));
  c.differentials = std::move(run.differentials);
  c.precision = std::move(run.precision);
  return c;
}

BettiTable betti_table(const ModulePresentation& m, std::size_t n, std::uint32_t d) {
  const auto lo = minimal_resolution(m, n, d);
  const auto hi = minimal_resolution(m, n, d + 2);
  BettiTable t;
  t.betti = lo.betti;
  t.truncation = d;
  if (lo.betti.empty() || hi.betti.empty() || lo.betti[0] != hi.betti[0]) {
    throw Error(Errc::precision_unstable, "minimal generator counts disagree across truncations");
  }
  std::size_t i = 0;
  while (i + 1 < lo.betti.size() && i + 1 < hi.betti.size() && lo.betti[i + 1] == hi.betti[i + 1]) {
    ++i;
  }
  t.certified_to = i;
  return t;
}

ComplexityEstimate complexity_estimate(const BettiTable& b) {
  const std::size_t window = std::min(b.certified_to + 1, b.betti.size());
  if (window < 6) {
    throw Error(Errc::window_too_short, "complexity needs a certified window of at least 6, have " +
                                            std::to_string(window));
  }
  ComplexityEstimate e;
  e.window = window;
  const std::size_t half = window / 2;
  const auto first_max = *std::max_element(b.betti.begin(), b.betti.begin() + half);
  const auto second_begin = b.betti.begin() + static_cast<std::ptrdiff_t>(half);
  const auto second_end = b.betti.begin() + static_cast<std::ptrdiff_t>(window);
  const auto second_max = *std::max_element(second_begin, second_end);
  if (second_max == 0) {
    e.cx_upper_evidence = 0;
    e.bounded = true;
  } else if (second_max <= first_max) {
    e.cx_upper_evidence = 1;
    e.bounded = true;
  } else {
    std::size_t h = half;
    while (h + 1 < window && b.betti[h] == 0) ++h;
    const std::size_t last = window - 1;
    const double growth = std::log(static_cast<double>(b.betti[last]) / b.betti[h]) /
                          std::log(static_cast<double>(last + 1) / static_cast<double>(h + 1));
    e.cx_upper_evidence = static_cast<int>(std::lround(growth)) + 1;
    e.bounded = false;
  }
  return e;
}

int vpd_formula(int depth_a, int depth_m, int cx) {
  if (depth_a < 0 || depth_m < 0 || cx < 0) {
    throw Error(Errc::invalid_input, "depths and complexity must be nonnegative");
  }
  const int v = depth_a - depth_m + cx;
  if (v < 0) throw Error(Errc::invalid_input, "depth M exceeds depth A + cx");
  return v;
}

}  // namespace lochf::homalg
