#pragma once

// Dense exact linear algebra over a field.
//
// Everything here is deterministic: pivots are chosen as the first nonzero
// entry scanning columns in a fixed order and rows top-down, so repeated runs
// produce identical echelon forms, solutions and nullspace bases. Ranks are
// exact (no floating point anywhere).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace fermat {

// Column scan order used for pivot selection. Two orders are exposed so
// callers can check that derived invariants (e.g. lifted chain maps compared
// at the level of cohomology classes) do not depend on the choice of pivots.
enum class PivotOrder { LeftToRight, RightToLeft };

template <class K>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, K(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a.at(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != cols_)
      throw std::invalid_argument("Matrix apply: size mismatch");
    std::vector<K> r(rows_, K(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero(at(i, j))) r[i] += at(i, j) * v[j];
    return r;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<K> a_;
};

namespace detail {

template <class K>
std::vector<std::size_t> column_order(std::size_t cols, PivotOrder order) {
  std::vector<std::size_t> cs(cols);
  for (std::size_t j = 0; j < cols; ++j)
    cs[j] = (order == PivotOrder::LeftToRight) ? j : cols - 1 - j;
  return cs;
}

// Reduce [m | rhs] to reduced row echelon form in place, scanning columns in
// the given order. Returns the list of (pivot_row, pivot_col) pairs.
template <class K>
std::vector<std::pair<std::size_t, std::size_t>> rref(
    Matrix<K>& m, std::vector<K>* rhs, PivotOrder order) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t next_row = 0;
  for (std::size_t col : column_order<K>(m.cols(), order)) {
    if (next_row >= m.rows()) break;
    std::size_t pr = next_row;
    while (pr < m.rows() && is_zero(m.at(pr, col))) ++pr;
    if (pr == m.rows()) continue;
    if (pr != next_row) {
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m.at(pr, j), m.at(next_row, j));
      if (rhs) std::swap((*rhs)[pr], (*rhs)[next_row]);
    }
    const K inv = K(1) / m.at(next_row, col);
    for (std::size_t j = 0; j < m.cols(); ++j)
      m.at(next_row, j) = m.at(next_row, j) * inv;
    if (rhs) (*rhs)[next_row] = (*rhs)[next_row] * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == next_row || is_zero(m.at(i, col))) continue;
      const K f = m.at(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(next_row, j);
      if (rhs) (*rhs)[i] = (*rhs)[i] - f * (*rhs)[next_row];
    }
    pivots.emplace_back(next_row, col);
    ++next_row;
  }
  return pivots;
}

}  // namespace detail

template <class K>
std::size_t rank(Matrix<K> m,
                 PivotOrder order = PivotOrder::LeftToRight) {
  return detail::rref(m, static_cast<std::vector<K>*>(nullptr), order).size();
}

template <class K>
std::size_t nullity(const Matrix<K>& m,
                    PivotOrder order = PivotOrder::LeftToRight) {
  return m.cols() - rank(m, order);
}

// First solution of A x = b under the pivot order: pivot variables take the
// reduced right-hand side, free variables are set to zero. Returns nullopt
// for inconsistent systems.
template <class K>
std::optional<std::vector<K>> solve(Matrix<K> a, std::vector<K> b,
                                    PivotOrder order = PivotOrder::LeftToRight) {
  if (b.size() != a.rows())
    throw std::invalid_argument("solve: rhs size mismatch");
  auto pivots = detail::rref(a, &b, order);
  // Consistency: any zero row of A with nonzero rhs kills the system.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool zero_row = true;
    for (std::size_t j = 0; j < a.cols() && zero_row; ++j)
      if (!is_zero(a.at(i, j))) zero_row = false;
    if (zero_row && !is_zero(b[i])) return std::nullopt;
  }
  std::vector<K> x(a.cols(), K(0));
  for (auto [pr, pc] : pivots) x[pc] = b[pr];
  return x;
}

// Deterministic nullspace basis: one vector per free column, in column order.
template <class K>
std::vector<std::vector<K>> nullspace(Matrix<K> a,
                                      PivotOrder order = PivotOrder::LeftToRight) {
  auto pivots = detail::rref(a, static_cast<std::vector<K>*>(nullptr), order);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto [pr, pc] : pivots) is_pivot[pc] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (is_pivot[j]) continue;
    std::vector<K> v(a.cols(), K(0));
    v[j] = K(1);
    for (auto [pr, pc] : pivots) v[pc] = -a.at(pr, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Exact determinant by fraction-preserving elimination (used for the unit
// determinant check on Gram matrices; sizes here are tiny).
template <class K>
K determinant(Matrix<K> m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("determinant: square matrix required");
  K det(1);
  std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pr = col;
    while (pr < n && is_zero(m.at(pr, col))) ++pr;
    if (pr == n) return K(0);
    if (pr != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pr, j), m.at(col, j));
      det = -det;
    }
    det = det * m.at(col, col);
    const K inv = K(1) / m.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (is_zero(m.at(i, col))) continue;
      const K f = m.at(i, col) * inv;
      for (std::size_t j = col; j < n; ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(col, j);
    }
  }
  return det;
}

}  // namespace fermat
