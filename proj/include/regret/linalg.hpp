// Small dense matrix type and a Cholesky solve, enough for the desk-scale
// affine projections used by the polyhedral regions.
#pragma once

#include <stdexcept>

#include "regret/vec.hpp"

namespace regret {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // row-major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  Vec apply(const Vec& x) const {
    Vec y = zeros(rows);
    for (int i = 0; i < rows; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols; ++j) s += at(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  Vec apply_transposed(const Vec& y) const {
    Vec x = zeros(cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) x[j] += at(i, j) * y[i];
    return x;
  }
};

// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
inline Matrix cholesky(const Matrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("cholesky: matrix not square");
  const int n = a.rows;
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a.at(i, j);
      for (int k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
      if (i == j) {
        if (s <= 0.0) throw std::invalid_argument("cholesky: matrix not positive definite");
        l.at(i, i) = std::sqrt(s);
      } else {
        l.at(i, j) = s / l.at(j, j);
      }
    }
  }
  return l;
}

// Solves (L L^T) x = b given the Cholesky factor L.
inline Vec cholesky_solve(const Matrix& l, const Vec& b) {
  const int n = l.rows;
  Vec y = zeros(n);
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l.at(i, k) * y[k];
    y[i] = s / l.at(i, i);
  }
  Vec x = zeros(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < n; ++k) s -= l.at(k, i) * x[k];
    x[i] = s / l.at(i, i);
  }
  return x;
}

}  // namespace regret
