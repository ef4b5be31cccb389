#include "lochf/eisops/operators.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lochf/error.hpp"
#include "lochf/locring/span.hpp"

namespace lochf::eisops {
namespace {

using exactla::EchelonForm;
using exactla::Index;
using exactla::SparseVector;
using locring::Monomial;
using locring::ModuleCoordinates;

std::string entry_name(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r + 1) + ", " + std::to_string(c + 1) + ")";
}

PolyMatrix negated(const PolyMatrix& m) {
  PolyMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = -m(i, j);
  return out;
}

PolyMatrix as_poly(const ExactMatrix& a, std::size_t nvars) {
  PolyMatrix out(a.field(), nvars, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = Polynomial::constant(a.field(), nvars, a(i, j));
  return out;
}

ExactMatrix constant_part(const PolyMatrix& m) {
  ExactMatrix out(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).constant_term();
  return out;
}

// Span of (f) inside Q / n^bound, for normal forms.
struct IdealModulo {
  ModuleCoordinates coords;
  EchelonForm span;

  IdealModulo(const std::vector<Polynomial>& f, std::size_t nvars, FieldSpec field,
              std::uint32_t bound)
      : coords(locring::shared_table(nvars, bound), 1), span(field, coords.dimension()) {
    const auto& table = coords.table();
    for (const auto& g : f) {
      const auto o = g.ord();
      if (!o || *o >= bound) continue;
      for (std::size_t mi = 0; mi < table.offset(bound - *o); ++mi) {
        auto v = coords.shifted({g}, table[mi]);
        if (!v.empty()) span.insert(std::move(v));
      }
    }
  }

  Polynomial normal_form(const Polynomial& p) const {
    return coords.from_sparse(span.reduce(coords.to_sparse({p})), span.field())[0];
  }
  bool contains(const Polynomial& p) const { return span.contains(coords.to_sparse({p})); }
};

// Solves sum_j q_j f_j = target in Q / n^bound. Unknowns are the pairs
// (j, u) with u a monomial, numbered by deg u descending so that the
// homogeneous solutions eliminate high-degree unknowns first.
class IdealSolver {
 public:
  IdealSolver(const std::vector<Polynomial>& f, std::size_t nvars, FieldSpec field,
              std::uint32_t bound)
      : field_(field),
        nvars_(nvars),
        count_(f.size()),
        coords_(locring::shared_table(nvars, bound), 1),
        span_(field, coords_.dimension(), true) {
    const auto& table = coords_.table();
    std::vector<std::uint32_t> limit(f.size(), 0);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const auto o = f[j].ord();
      if (o && *o < bound) limit[j] = bound - *o;
    }
    for (std::uint32_t deg = bound; deg-- > 0;) {
      for (std::size_t j = 0; j < f.size(); ++j) {
        if (deg >= limit[j]) continue;
        for (std::size_t mi = table.offset(deg); mi < table.offset(deg + 1); ++mi)
          unknowns_.push_back({j, mi});
      }
    }
    std::vector<SparseVector> relations;
    for (std::size_t t = 0; t < unknowns_.size(); ++t) {
      const auto& u = unknowns_[t];
      auto v = coords_.shifted({f[u.generator]}, table[u.monomial]);
      if (auto rel = span_.insert(std::move(v), static_cast<Index>(t)))
        relations.push_back(std::move(*rel));
    }
    homogeneous_ = EchelonForm(field, static_cast<Index>(unknowns_.size()));
    for (auto& r : relations) homogeneous_.insert(std::move(r));
  }

  std::optional<std::vector<Polynomial>> solve(const Polynomial& target) const {
    auto e = span_.express(coords_.to_sparse({target}));
    if (!e.residue.empty()) return std::nullopt;
    const auto reduced = homogeneous_.reduce(std::move(e.combination));
    std::vector<Polynomial> q(count_, Polynomial(field_, nvars_));
    for (const auto& entry : reduced.entries()) {
      const auto& u = unknowns_[static_cast<std::size_t>(entry.index)];
      q[u.generator].add_term(coords_.table()[u.monomial], entry.value);
    }
    return q;
  }

 private:
  struct Unknown {
    std::size_t generator;
    std::size_t monomial;
  };

  FieldSpec field_;
  std::size_t nvars_;
  std::size_t count_;
  ModuleCoordinates coords_;
  EchelonForm span_;
  EchelonForm homogeneous_{field_, 0};
  std::vector<Unknown> unknowns_;
};

std::size_t rank_of_stack(const std::vector<const ExactMatrix*>& blocks, std::size_t rows,
                          FieldSpec field) {
  std::size_t cols = 0;
  for (const auto* b : blocks) cols += b->cols();
  ExactMatrix m(field, rows, cols);
  std::size_t at = 0;
  for (const auto* b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b->cols(); ++j) m(i, at + j) = (*b)(i, j);
    at += b->cols();
  }
  return exactla::rank(m);
}

std::size_t clamp_window(const ExtModule& e, std::size_t window) {
  const std::size_t w = std::min(window, e.top());
  if (w < 4) {
    throw Error(Errc::window_too_short,
                "window needs at least 4 degrees, have " + std::to_string(w));
  }
  return w;
}

}  // namespace

std::size_t LiftedComplex::rank(std::size_t i) const {
  if (differentials.empty()) return 0;
  if (i == 0) return differentials.front().rows();
  return differentials.at(i - 1).cols();
}

LiftedComplex lift_complex(const FreeComplex& f) {
  const auto& a = *f.over;
  LiftedComplex out;
  out.base = f.over;
  std::map<std::uint32_t, IdealModulo> ideals;
  for (std::size_t i = 1; i <= f.length(); ++i) {
    const std::uint32_t p = f.precision_of(i);
    auto it = ideals.find(p);
    if (it == ideals.end())
      it = ideals.emplace(p, IdealModulo(a.relations(), a.nvars(), a.field(), p)).first;
    const auto& d = f.d(i);
    PolyMatrix lifted(a.field(), a.nvars(), d.rows(), d.cols());
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) lifted(r, c) = it->second.normal_form(d(r, c));
    out.differentials.push_back(std::move(lifted));
    out.precision.push_back(p);
  }
  return out;
}

std::optional<std::size_t> reduction_mismatch(const LiftedComplex& lifted, const FreeComplex& f) {
  const auto& a = *f.over;
  if (lifted.length() != f.length()) return 1;
  for (std::size_t i = 1; i <= f.length(); ++i) {
    const IdealModulo ideal(a.relations(), a.nvars(), a.field(), lifted.precision_of(i));
    const auto& x = lifted.d(i);
    const auto& y = f.d(i);
    if (x.rows() != y.rows() || x.cols() != y.cols()) return i;
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c)
        if (!ideal.contains(x(r, c) - y(r, c))) return i;
  }
  return std::nullopt;
}

OperatorFamily solve_operators(const LiftedComplex& lifted) {
  return solve_operators(lifted, lifted.base->relations());
}

OperatorFamily solve_operators(const LiftedComplex& lifted, const std::vector<Polynomial>& f) {
  const auto& a = *lifted.base;
  OperatorFamily out;
  out.sequence = f;
  std::uint32_t top_ord = 0;
  for (const auto& g : f) top_ord = std::max(top_ord, g.ord().value_or(0));
  std::map<std::uint32_t, IdealSolver> solvers;
  for (std::size_t i = 2; i <= lifted.length(); ++i) {
    const std::uint32_t bound = std::min(lifted.precision_of(i - 1), lifted.precision_of(i));
    // constant parts of t~_j are invisible once n^bound swallows f_j
    if (bound <= top_ord) break;
    auto it = solvers.find(bound);
    if (it == solvers.end())
      it = solvers.emplace(bound, IdealSolver(f, a.nvars(), a.field(), bound)).first;
    const auto square = PolyMatrix::truncated_product(lifted.d(i - 1), lifted.d(i), bound);
    std::vector<PolyMatrix> ops(f.size(),
                                PolyMatrix(a.field(), a.nvars(), square.rows(), square.cols()));
    for (std::size_t r = 0; r < square.rows(); ++r) {
      for (std::size_t c = 0; c < square.cols(); ++c) {
        const auto q = it->second.solve(square(r, c));
        if (!q) {
          throw Error(Errc::not_in_ideal, "entry " + entry_name(r, c) + " of d_" +
                                              std::to_string(i - 1) + " d_" + std::to_string(i) +
                                              " is not in the ideal");
        }
        for (std::size_t j = 0; j < f.size(); ++j) ops[j](r, c) = (*q)[j];
      }
    }
    out.ops.push_back(std::move(ops));
    out.bounds.push_back(bound);
  }
  return out;
}

IdentityCheck check_identity(const LiftedComplex& lifted, const OperatorFamily& t) {
  IdentityCheck out;
  out.exact = true;
  for (std::size_t i = 2; i <= t.top(); ++i) {
    auto diff = negated(lifted.d(i - 1) * lifted.d(i));
    for (std::size_t j = 0; j < t.count(); ++j) diff = diff + t.sequence[j] * t.t(j, i);
    if (!diff.is_zero()) out.exact = false;
    if (!out.failure && !diff.truncated(t.bound(i)).is_zero()) out.failure = i;
  }
  if (out.failure) out.exact = false;
  return out;
}

CoefficientMatrix::CoefficientMatrix(PolyMatrix alpha) : alpha_(std::move(alpha)) {
  if (alpha_.rows() != alpha_.cols())
    throw Error(Errc::invalid_input, "coefficient matrix must be square");
  det_ = exactla::determinant(constant_part());
  if (det_.is_zero())
    throw Error(Errc::not_invertible, "coefficient matrix has a non-unit determinant");
}

CoefficientMatrix CoefficientMatrix::constant(const ExactMatrix& alpha, std::size_t nvars) {
  return CoefficientMatrix(as_poly(alpha, nvars));
}

ExactMatrix CoefficientMatrix::constant_part() const { return eisops::constant_part(alpha_); }

bool CoefficientMatrix::is_constant() const {
  for (std::size_t i = 0; i < alpha_.rows(); ++i)
    for (std::size_t j = 0; j < alpha_.cols(); ++j)
      if (alpha_(i, j).max_degree().value_or(0) > 0) return false;
  return true;
}

std::vector<Polynomial> transform_generators(const CoefficientMatrix& alpha,
                                             const std::vector<Polynomial>& f, std::uint32_t d) {
  const std::size_t c = alpha.size();
  if (f.size() != c) throw Error(Errc::invalid_input, "coefficient matrix size differs from c");
  const auto& m = alpha.matrix();
  const std::size_t nvars = m.nvars();
  const auto inv0 = as_poly(*exactla::inverse(alpha.constant_part()), nvars);
  PolyMatrix column(m.field(), nvars, c, 1);
  for (std::size_t i = 0; i < c; ++i) column(i, 0) = f[i];
  PolyMatrix g(m.field(), nvars, c, 1);
  if (alpha.is_constant()) {
    g = inv0 * column;
  } else {
    // alpha = alpha0 (I + N) with N in n, so alpha^{-1} = sum (-N)^k alpha0^{-1}
    const auto n = PolyMatrix::truncated_product(
        inv0, m + negated(as_poly(alpha.constant_part(), nvars)), d);
    const auto minus_n = negated(n);
    PolyMatrix power = PolyMatrix::identity(m.field(), nvars, c);
    PolyMatrix inverse = power;
    for (std::uint32_t k = 1; k < d; ++k) {
      power = PolyMatrix::truncated_product(power, minus_n, d);
      if (power.is_zero()) break;
      inverse = inverse + power;
    }
    inverse = PolyMatrix::truncated_product(inverse, inv0, d);
    g = PolyMatrix::truncated_product(inverse, column, d);
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < c; ++i) out.push_back(g(i, 0));
  return out;
}

OperatorFamily base_change_operators(const LiftedComplex& lifted, const CoefficientMatrix& alpha,
                                     const OperatorFamily& t) {
  const std::size_t c = t.count();
  if (alpha.size() != c) throw Error(Errc::invalid_input, "coefficient matrix size differs from c");
  const auto& m = alpha.matrix();
  OperatorFamily out;
  out.sequence = transform_generators(alpha, t.sequence, lifted.base->truncation());
  out.bounds = t.bounds;
  for (std::size_t i = 2; i <= t.top(); ++i) {
    std::vector<PolyMatrix> ops;
    for (std::size_t j = 0; j < c; ++j) {
      PolyMatrix sum(m.field(), m.nvars(), t.t(0, i).rows(), t.t(0, i).cols());
      for (std::size_t k = 0; k < c; ++k) sum = sum + m(k, j) * t.t(k, i);
      ops.push_back(sum.truncated(t.bound(i)));
    }
    out.ops.push_back(std::move(ops));
  }
  if (const auto bad = check_identity(lifted, out).failure) {
    throw Error(Errc::not_in_ideal,
                "base-changed operators fail sum g_j t'_j = d^2 at index " + std::to_string(*bad));
  }
  return out;
}

ExtModule ext_action(const FreeComplex& f, const OperatorFamily& t) {
  if (!f.is_minimal()) throw Error(Errc::not_minimal, "complex has a unit entry");
  ExtModule e;
  e.field = f.over->field();
  const std::size_t top = t.count() == 0 ? f.length() : std::min(f.length(), t.top());
  for (std::size_t i = 0; i <= top; ++i) e.dims.push_back(f.rank(i));
  e.action.resize(t.count());
  for (std::size_t j = 0; j < t.count(); ++j) {
    for (std::size_t i = 2; i <= top; ++i)
      e.action[j].push_back(constant_part(t.t(j, i)).transpose());
  }
  if (const auto bad = first_noncommuting(e)) {
    throw Error(Errc::precision_unstable, "operators " + std::to_string(bad->a + 1) + " and " +
                                              std::to_string(bad->b + 1) +
                                              " do not commute on Ext^" +
                                              std::to_string(bad->degree));
  }
  return e;
}

std::optional<CommutationFailure> first_noncommuting(const ExtModule& e) {
  for (std::size_t a = 0; a < e.operator_count(); ++a) {
    for (std::size_t b = a + 1; b < e.operator_count(); ++b) {
      const std::size_t n = std::min(e.action[a].size(), e.action[b].size());
      for (std::size_t i = 0; i + 2 < n; ++i) {
        if (!(e.T(a, i + 2) * e.T(b, i) == e.T(b, i + 2) * e.T(a, i))) return {{a, b, i}};
      }
    }
  }
  return std::nullopt;
}

FiniteGenerationReport finite_generation_window(const ExtModule& e, std::size_t window) {
  FiniteGenerationReport r;
  r.window = clamp_window(e, window);
  for (std::size_t d = 0; d <= r.window; ++d) {
    std::size_t fresh = e.dims[d];
    if (d >= 2) {
      std::vector<const ExactMatrix*> blocks;
      for (std::size_t j = 0; j < e.operator_count(); ++j)
        if (d - 2 < e.action[j].size()) blocks.push_back(&e.T(j, d - 2));
      fresh -= rank_of_stack(blocks, e.dims[d], e.field);
    }
    r.new_generators.push_back(fresh);
    if (fresh > 0) r.last_new_degree = d;
  }
  r.stable = !r.last_new_degree || *r.last_new_degree + 2 <= r.window;
  return r;
}

std::size_t parameter_window_start(std::size_t window) { return window / 2 > 0 ? window / 2 - 1 : 0; }

ParameterElement parameter_search(const ExtModule& e, std::size_t window,
                                  std::size_t max_attempts) {
  const std::size_t w = clamp_window(e, window);
  const std::size_t from = parameter_window_start(w);
  const std::size_t c = e.operator_count();
  bool any = false;
  for (std::size_t i = from; i <= w; ++i) any = any || e.dims[i] > 0;
  if (!any) {
    throw Error(Errc::not_dimension_one,
                "Ext vanishes from degree " + std::to_string(from) + ": finite length");
  }
  for (std::size_t i = from; i + 2 <= w; ++i) {
    if (e.dims[i] != e.dims[i + 2]) {
      throw Error(Errc::not_dimension_one, "dim Ext^" + std::to_string(i + 2) + " = " +
                                               std::to_string(e.dims[i + 2]) + " differs from dim Ext^" +
                                               std::to_string(i) + " = " + std::to_string(e.dims[i]));
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (e.action[j].size() + 2 <= w) throw Error(Errc::invalid_input, "operators do not cover the window");
  }
  const std::int64_t top = e.field.is_prime_field() ? e.field.characteristic() - 1 : 9;
  std::vector<std::int64_t> digits(c, 1);
  ParameterElement out;
  out.from = from;
  out.to = w - 2;
  while (true) {
    if (out.attempts == max_attempts) {
      throw Error(Errc::search_exhausted,
                  "no parameter among " + std::to_string(max_attempts) + " coefficient tuples");
    }
    ++out.attempts;
    bool bijective = true;
    for (std::size_t i = from; bijective && i + 2 <= w; ++i) {
      ExactMatrix xi(e.field, e.dims[i + 2], e.dims[i]);
      for (std::size_t j = 0; j < c; ++j) {
        const Scalar b = e.field.from_int(digits[j]);
        for (std::size_t r = 0; r < xi.rows(); ++r)
          for (std::size_t s = 0; s < xi.cols(); ++s) xi(r, s) += b * e.T(j, i)(r, s);
      }
      bijective = exactla::rank(xi) == e.dims[i];
    }
    if (bijective) {
      for (auto d : digits) out.coefficients.push_back(e.field.from_int(d));
      return out;
    }
    std::size_t k = c;
    while (k > 0 && digits[k - 1] == top) digits[--k] = 1;
    if (k == 0) {
      throw Error(Errc::search_exhausted,
                  "no parameter among " + std::to_string(out.attempts) + " coefficient tuples");
    }
    ++digits[k - 1];
  }
}

bool StrictReductionReport::holds() const {
  return round_trip && tail_regular.verdict == grmod::RegularVerdict::regular_certified &&
         initial_forms_match && pd_at_most_one && dim_p_at_least_two;
}

namespace {

std::uint32_t required_degree(const std::vector<Polynomial>& forms) {
  std::uint32_t s = 1;
  for (const auto& f : forms) s += *f.max_degree() - 1;
  return s;
}

}  // namespace

StrictReduction strict_reduction(const ModulePresentation& m, const StrictOptions& options) {
  const auto& a = m.over();
  const auto field = a.field();
  const std::size_t nvars = a.nvars();
  const std::size_t c = a.relation_count();
  const auto& vars = a.ring().variables;
  const std::uint32_t d = options.truncation;
  if (c == 0) throw Error(Errc::invalid_input, "ring has no relations to reduce");
  for (const auto& f : a.relations()) {
    if (f.is_zero()) throw Error(Errc::zero_element, "zero relation");
  }

  StrictReduction out;
  out.order.resize(c);
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t x, std::size_t y) {
    return *a.relations()[x].ord() > *a.relations()[y].ord();
  });
  for (auto i : out.order) out.sorted.push_back(a.relations()[i]);

  std::vector<Polynomial> initial;
  for (const auto& f : out.sorted) initial.push_back(f.initial_form());
  const auto strict = grmod::regular_sequence_test(vars, field, initial, required_degree(initial));
  if (strict.verdict != grmod::RegularVerdict::regular_certified) {
    throw Error(Errc::not_strict, "initial forms are not certified regular (" +
                                      grmod::to_string(strict.verdict) + ")");
  }

  auto sorted_ring = std::make_shared<const QuotientPresentation>(
      a.ring().with_truncation(d), out.sorted, true);
  const auto module = m.over_ring(sorted_ring);
  const auto betti = homalg::betti_table(module, options.window, d);
  const auto cx = homalg::complexity_estimate(betti);
  if (cx.cx_upper_evidence > 1) {
    throw Error(Errc::not_dimension_one,
                "Betti numbers grow: complexity evidence " + std::to_string(cx.cx_upper_evidence));
  }

  const auto complex = homalg::resolution_complex(module, options.window, d);
  const auto lifted = lift_complex(complex);
  const auto ops = solve_operators(lifted);
  out.ext = ext_action(complex, ops);
  out.xi = parameter_search(out.ext, options.window);

  out.beta = ExactMatrix::identity(field, c);
  for (std::size_t j = 0; j < c; ++j) out.beta(0, j) = out.xi.coefficients[j];
  const auto alpha = CoefficientMatrix::constant(out.beta.transpose(), nvars);
  out.g = transform_generators(alpha, out.sorted, d);

  auto& rep = out.report;
  {
    PolyMatrix gcol(field, nvars, c, 1);
    for (std::size_t i = 0; i < c; ++i) gcol(i, 0) = out.g[i];
    const auto back = alpha.matrix() * gcol;
    rep.round_trip = true;
    for (std::size_t i = 0; i < c; ++i) rep.round_trip = rep.round_trip && back(i, 0) == out.sorted[i];
  }

  const Scalar b1 = out.xi.coefficients[0];
  const std::uint32_t ord1 = *out.sorted[0].ord();
  out.g_star.push_back(b1.inverse() * initial[0]);
  for (std::size_t j = 1; j < c; ++j) {
    if (ord1 > *out.sorted[j].ord()) {
      out.g_star.push_back(initial[j]);
    } else {
      out.g_star.push_back((-out.xi.coefficients[j] / b1) * initial[0] + initial[j]);
    }
  }
  rep.initial_forms_match = true;
  for (std::size_t j = 0; j < c; ++j) {
    rep.initial_forms_match = rep.initial_forms_match && !out.g[j].is_zero() &&
                              !out.g_star[j].is_zero() && out.g[j].initial_form() == out.g_star[j];
  }

  const std::vector<Polynomial> tail(out.g_star.begin() + 1, out.g_star.end());
  rep.tail_regular = grmod::regular_sequence_test(vars, field, tail, required_degree(tail));

  const std::vector<Polynomial> p_relations(out.g.begin() + 1, out.g.end());
  out.p = std::make_shared<const QuotientPresentation>(a.ring().with_truncation(d), p_relations,
                                                       true);
  const auto& phi = m.matrix();
  PolyMatrix over_p(field, nvars, phi.rows(), phi.cols() + phi.rows());
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    for (std::size_t j = 0; j < phi.cols(); ++j) over_p(i, j) = phi(i, j);
    over_p(i, phi.cols() + i) = out.g[0];
  }
  rep.betti_over_p = homalg::betti_table(ModulePresentation(out.p, over_p), options.window, d);
  const auto& bp = rep.betti_over_p;
  rep.pd_at_most_one = bp.certified_to >= 4;
  for (std::size_t i = 2; i <= bp.certified_to && i < bp.betti.size(); ++i)
    rep.pd_at_most_one = rep.pd_at_most_one && bp.betti[i] == 0;

  rep.dim_p = static_cast<int>(nvars) - static_cast<int>(c) + 1;
  rep.dim_p_at_least_two = rep.dim_p >= 2;
  return out;
}

}  // namespace lochf::eisops
