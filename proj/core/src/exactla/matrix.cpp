#include "lochf/exactla/matrix.hpp"

#include <sstream>

#include "lochf/error.hpp"

namespace lochf::exactla {

ExactMatrix::ExactMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

ExactMatrix ExactMatrix::identity(FieldSpec field, std::size_t n) {
  ExactMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

ExactMatrix ExactMatrix::from_ints(
    FieldSpec field, const std::vector<std::vector<long long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(Errc::invalid_input, "ragged matrix literal");
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector ExactMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw Error(Errc::invalid_input, "dimension mismatch");
  Vector y(rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero()) y[i] += (*this)(i, j) * x[j];
    }
  return y;
}

bool ExactMatrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::invalid_input, "dimension mismatch");
  ExactMatrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(Errc::invalid_input, "dimension mismatch");
  }
  ExactMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) {
      out << (j ? ", " : "") << (*this)(i, j).to_string();
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

RrefResult rref(const ExactMatrix& m) {
  ExactMatrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t p = row;
    while (p < r.rows() && r(p, col).is_zero()) ++p;
    if (p == r.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(row, j));
    }
    const Scalar inv = r(row, col).inverse();
    for (std::size_t j = col; j < r.cols(); ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      const Scalar factor = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j) r(i, j) -= factor * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {pivots.size(), std::move(r), std::move(pivots)};
}

std::size_t rank(const ExactMatrix& m) { return rref(m).rank; }

std::vector<Vector> kernel_basis(const ExactMatrix& m) {
  const RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), m.field().zero());
    v[free] = m.field().one();
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
      v[rr.pivots[i]] = -rr.reduced(i, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve_linear(const ExactMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) {
    throw Error(Errc::invalid_input, "right-hand side length mismatch");
  }
  ExactMatrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const RrefResult rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), m.field().zero());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
    x[rr.pivots[i]] = rr.reduced(i, m.cols());
  }
  return x;
}

Scalar determinant(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::invalid_input, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix a = m;
  Scalar det = m.field().one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return m.field().zero();
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      det = -det;
    }
    det *= a(k, k);
    const Scalar inv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const Scalar factor = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  if (n == 0) return ExactMatrix(m.field(), 0, 0);
  ExactMatrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field().one();
  }
  const RrefResult rr = rref(aug);
  if (rr.rank < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
  ExactMatrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.reduced(i, n + j);
  return inv;
}

}  // namespace lochf::exactla
