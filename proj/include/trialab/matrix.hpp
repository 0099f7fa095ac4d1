#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "trialab/field.hpp"

namespace trialab {

using Vec = std::vector<Fe>;

/// Dense row-major matrix of field elements. Arithmetic lives in `la`, which
/// takes the field explicitly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(const FiniteField& F, std::size_t n);
  static Matrix from_columns(std::span<const Vec> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Fe& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Fe operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Fe> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Fe> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);

  const std::vector<Fe>& data() const { return data_; }
  std::vector<Fe>& data() { return data_; }

  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fe> data_;
};

namespace la {

Matrix mul(const FiniteField& F, const Matrix& a, const Matrix& b);
Vec apply(const FiniteField& F, const Matrix& a, const Vec& x);
Matrix add(const FiniteField& F, const Matrix& a, const Matrix& b);
Matrix sub(const FiniteField& F, const Matrix& a, const Matrix& b);
Matrix scale(const FiniteField& F, Fe c, const Matrix& a);
Matrix transpose(const Matrix& a);

Vec add(const FiniteField& F, const Vec& a, const Vec& b);
Vec sub(const FiniteField& F, const Vec& a, const Vec& b);
Vec scale(const FiniteField& F, Fe c, const Vec& a);
Fe dot(const FiniteField& F, const Vec& a, const Vec& b);
bool is_zero(const Vec& v);

struct Echelon {
  Matrix rref;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form; rows past pivots.size() are zero.
Echelon rref(const FiniteField& F, Matrix a);
std::size_t rank(const FiniteField& F, Matrix a);

/// Basis of the right kernel {x : a x = 0}, as the rows of a matrix in
/// reduced row echelon form.
Matrix kernel(const FiniteField& F, const Matrix& a);

std::optional<Matrix> inverse(const FiniteField& F, const Matrix& a);
Fe det(const FiniteField& F, Matrix a);

/// Some solution of a x = b, if one exists.
std::optional<Vec> solve(const FiniteField& F, const Matrix& a, const Vec& b);

/// Incremental Gaussian elimination for streamed linear equations.
class RowReducer {
 public:
  RowReducer(const FiniteField& F, std::size_t cols) : F_(F), cols_(cols) {}

  /// Adds an equation; returns true if it increased the rank.
  bool add(Vec row);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  /// Kernel basis (rows, reduced echelon form).
  Matrix kernel() const;

 private:
  FiniteField F_;
  std::size_t cols_;
  std::vector<Vec> rows_;             // each row has a leading 1 at pivots_[i]
  std::vector<std::size_t> pivots_;
};

}  // namespace la
}  // namespace trialab
