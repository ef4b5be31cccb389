#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lochf/exactla/field.hpp"

namespace lochf::exactla {

using Vector = std::vector<Scalar>;

/// Dense rectangular matrix over a single field.
class ExactMatrix {
 public:
  ExactMatrix(FieldSpec field, std::size_t rows, std::size_t cols);

  static ExactMatrix identity(FieldSpec field, std::size_t n);
  static ExactMatrix from_ints(FieldSpec field,
                               const std::vector<std::vector<long long>>& rows);

  FieldSpec field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ExactMatrix transpose() const;
  Vector apply(const Vector& x) const;
  bool is_zero() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  std::size_t rank;
  ExactMatrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form; the pivot in each column is the first nonzero
/// entry at or below the current row.
RrefResult rref(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

/// Basis of the right null space, one vector per free column.
std::vector<Vector> kernel_basis(const ExactMatrix& m);

/// Some x with m x = b, or nullopt when b is outside the column space.
std::optional<Vector> solve_linear(const ExactMatrix& m, const Vector& b);

/// Determinant of a square matrix by Gaussian elimination.
Scalar determinant(const ExactMatrix& m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<ExactMatrix> inverse(const ExactMatrix& m);

}  // namespace lochf::exactla
