#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jordan/scalars.hpp"

namespace jordan {

using Vector = std::vector<Scalar>;

/// Dense exact matrix over a Field, row-major.
class Matrix {
 public:
  Matrix(const Field& field, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& field, std::size_t n);
  /// Builds a matrix whose rows are the given vectors (all of length cols).
  static Matrix from_rows(const Field& field, std::size_t cols, std::span<const Vector> rows);
  static Matrix from_columns(const Field& field, std::size_t rows, std::span<const Vector> cols);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Vector apply(std::span<const Scalar> v) const;
  bool is_zero() const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row-echelon form. Over Q the elimination is fraction-free on
/// integer-scaled rows; pivots are normalised to 1 only at the end.
RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of {v : m v = 0}, one vector per row, itself in reduced row-echelon form.
Matrix kernel(const Matrix& m);

/// Row-reduced basis of the span of the given vectors.
std::vector<Vector> row_basis(const Field& field, std::size_t cols, std::span<const Vector> vectors);

std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

/// Some solution of m x = b, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b);

}  // namespace jordan
