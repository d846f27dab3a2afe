// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace hs {

using Vector = std::vector<double>;

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
// aᵀ·b without forming the transpose.
Matrix multiply_tn(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, const Vector& x);
Vector multiply_tn(const Matrix& a, const Vector& x);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double max_abs(const Matrix& a);
double max_abs(const Vector& v);
double frobenius(const Matrix& a);
double asymmetry(const Matrix& a);

// Throws NotPositiveDefinite with the 0-based index of the failing pivot.
Matrix cholesky(const Matrix& a);

// Solves L·x = b and Lᵀ·x = b for lower-triangular L.
Vector forward_substitute(const Matrix& l, const Vector& b);
Vector backward_substitute_transposed(const Matrix& l, const Vector& b);

struct EigenDecomposition {
  Vector values;   // ascending
  Matrix vectors;  // column j pairs with values[j]
};

// Cyclic Jacobi. Each eigenvector has its largest-magnitude component positive.
EigenDecomposition sym_eig(const Matrix& a, int max_sweeps = 100);

class LuFactorization {
 public:
  explicit LuFactorization(const Matrix& a);
  Vector solve(const Vector& b) const;
  std::size_t size() const { return lu_.rows(); }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

Vector solve(const Matrix& a, const Vector& b);

struct LeastSquaresResult {
  Vector x;
  double residual = 0.0;
};

LeastSquaresResult least_squares(const Matrix& a, const Vector& b);

}  // namespace hs
