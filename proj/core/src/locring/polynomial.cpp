#include "lochf/locring/polynomial.hpp"

#include "lochf/error.hpp"

namespace lochf::locring {

Polynomial Polynomial::constant(FieldSpec field, std::size_t nvars, const Scalar& c) {
  Polynomial p(field, nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::monomial(FieldSpec field, const Monomial& m, const Scalar& c) {
  Polynomial p(field, m.nvars());
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::variable(FieldSpec field, std::size_t nvars, std::size_t i) {
  return monomial(field, Monomial::variable(nvars, i), field.one());
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? field_.zero() : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (m.nvars() != nvars_) {
    throw Error(Errc::invalid_input, "monomial has the wrong number of variables");
  }
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<std::uint32_t> Polynomial::ord() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.degree();
}

std::optional<std::uint32_t> Polynomial::max_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.degree();
}

Polynomial Polynomial::initial_form() const {
  if (terms_.empty()) {
    throw Error(Errc::zero_element, "initial form of the zero element");
  }
  return homogeneous_component(*ord());
}

Polynomial Polynomial::homogeneous_component(std::uint32_t degree) const {
  Polynomial out(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() == degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

bool Polynomial::is_homogeneous() const {
  return terms_.empty() || *ord() == *max_degree();
}

Polynomial Polynomial::truncated(std::uint32_t bound) const {
  Polynomial out(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() >= bound) break;
    out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Scalar Polynomial::constant_term() const { return coefficient(Monomial(nvars_)); }

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::truncated_product(const Polynomial& a, const Polynomial& b,
                                         std::uint32_t bound) {
  if (a.nvars_ != b.nvars_) {
    throw Error(Errc::invalid_input, "polynomials over different rings");
  }
  Polynomial out(a.field_, a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    if (ma.degree() >= bound) break;
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.degree() + mb.degree() >= bound) break;
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  return Polynomial::truncated_product(a, b, UINT32_MAX);
}

Polynomial operator*(const Scalar& c, Polynomial a) {
  if (c.is_zero()) return Polynomial(a.field_, a.nvars_);
  for (auto& [m, v] : a.terms_) v *= c;
  return a;
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
  Polynomial out(field_, nvars_);
  for (const auto& [t, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), t * m, c);
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const mpq_class q = it->second.to_rational();
    const bool negative = sgn(q) < 0;
    const mpq_class mag = negative ? mpq_class(-q) : q;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit_monomial = it->first.degree() == 0;
    if (mag != 1 || unit_monomial) {
      out += mag.get_str();
      if (!unit_monomial) out += '*';
    }
    if (!unit_monomial) out += it->first.to_string(names);
  }
  return out;
}

PolyMatrix::PolyMatrix(FieldSpec field, std::size_t nvars, std::size_t rows,
                       std::size_t cols)
    : field_(field),
      nvars_(nvars),
      rows_(rows),
      cols_(cols),
      data_(rows * cols, Polynomial(field, nvars)) {}

PolyMatrix PolyMatrix::identity(FieldSpec field, std::size_t nvars, std::size_t n) {
  PolyMatrix m(field, nvars, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Polynomial::constant(field, nvars, field.one());
  }
  return m;
}

std::vector<Polynomial> PolyMatrix::column(std::size_t j) const {
  std::vector<Polynomial> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(field_, nvars_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::entries_in_maximal_ideal() const {
  for (const auto& p : data_)
    if (!p.constant_term().is_zero()) return false;
  return true;
}

PolyMatrix PolyMatrix::truncated(std::uint32_t bound) const {
  PolyMatrix out = *this;
  for (auto& p : out.data_) p = p.truncated(bound);
  return out;
}

std::optional<std::uint32_t> PolyMatrix::min_entry_ord() const {
  std::optional<std::uint32_t> best;
  for (const auto& p : data_) {
    const auto o = p.ord();
    if (o && (!best || *o < *best)) best = o;
  }
  return best;
}

PolyMatrix PolyMatrix::truncated_product(const PolyMatrix& a, const PolyMatrix& b,
                                         std::uint32_t bound) {
  if (a.cols_ != b.rows_) {
    throw Error(Errc::invalid_input, "matrix dimension mismatch");
  }
  PolyMatrix c(a.field_, a.nvars_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        c(i, j) += Polynomial::truncated_product(a(i, k), b(k, j), bound);
      }
    }
  return c;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  return PolyMatrix::truncated_product(a, b, UINT32_MAX);
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(Errc::invalid_input, "matrix dimension mismatch");
  }
  PolyMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

PolyMatrix operator*(const Polynomial& c, const PolyMatrix& a) {
  PolyMatrix out = a;
  for (auto& p : out.data_) p = c * p;
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<std::vector<std::string>> PolyMatrix::to_strings(
    std::span<const std::string> names) const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string(names));
  return out;
}

}  // namespace lochf::locring
