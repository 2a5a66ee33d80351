#pragma once

/**
 * @file nullspace.hpp
 * @brief Dense complex matrices and a normalized null vector of an
 *        underdetermined homogeneous system.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "symquad/errors.hpp"
#include "symquad/korobov.hpp"

namespace symquad {

class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_,
                     data_.begin() + b * cols_);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// ||M a||_inf.
inline double residual_inf(const ComplexMatrix& m, const std::vector<Complex>& a) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex s{};
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * a[j];
    r = std::max(r, std::abs(s));
  }
  return r;
}

struct NullspaceSolution {
  std::vector<Complex> coefficients;  // a, with a[pivot_index] == 1 and max |a_n| == 1
  std::size_t pivot_index;            // n*
  double residual;                    // ||M a||_inf
};

inline constexpr double kDefaultNullspaceTolerance = 1e-10;

/**
 * Nontrivial solution of M a = 0 for an N x (N+1) matrix.
 *
 * Row reduction with partial pivoting by maximal modulus; columns whose best
 * pivot is negligible are free. The last free column is set to 1, the others to
 * 0, and the pivot unknowns follow by back-substitution. The vector is divided
 * by its first entry of maximal modulus, whose position is n*.
 */
inline NullspaceSolution nullspace(const ComplexMatrix& m,
                                   double residual_tol = kDefaultNullspaceTolerance) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (cols != rows + 1) {
    throw InvalidInput("nullspace: expected an N x (N+1) matrix, got " + std::to_string(rows) +
                       " x " + std::to_string(cols));
  }
  ComplexMatrix u = m;
  const double scale = std::max(1.0, u.max_abs());
  const double negligible =
      static_cast<double>(cols) * std::numeric_limits<double>::epsilon() * scale;

  std::vector<std::size_t> pivot_col;  // pivot column of reduced row r
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (std::abs(u(i, c)) > std::abs(u(best, c))) best = i;
    }
    if (std::abs(u(best, c)) <= negligible) continue;
    u.swap_rows(best, r);
    const Complex pivot = u(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Complex factor = u(i, c) / pivot;
      if (factor == Complex{}) continue;
      u(i, c) = 0.0;
      for (std::size_t j = c + 1; j < cols; ++j) u(i, j) -= factor * u(r, j);
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++r;
  }

  std::size_t free_col = cols - 1;
  while (is_pivot[free_col]) --free_col;  // at least one column is free since rows < cols

  std::vector<Complex> a(cols);
  a[free_col] = 1.0;
  for (std::size_t row = pivot_col.size(); row-- > 0;) {
    const std::size_t c = pivot_col[row];
    Complex s{};
    for (std::size_t j = c + 1; j < cols; ++j) s += u(row, j) * a[j];
    a[c] = -s / u(row, c);
  }

  std::size_t star = 0;
  double largest = std::abs(a[0]);
  for (std::size_t n = 1; n < cols; ++n) {
    const double v = std::abs(a[n]);
    if (v > largest) {
      largest = v;
      star = n;
    }
  }
  if (!std::isfinite(largest)) throw NumericalFailure("nullspace: non-finite solution", largest);
  const Complex divisor = a[star];
  for (auto& v : a) v /= divisor;
  a[star] = 1.0;

  const double residual = residual_inf(m, a);
  if (!(residual <= residual_tol)) {
    throw NumericalFailure("nullspace: residual above tolerance", residual);
  }
  return {std::move(a), star, residual};
}

}  // namespace symquad
