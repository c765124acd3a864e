#pragma once

// Exact Gauss-Jordan elimination over a field scalar (Rational or
// GaussianRational). Pivoting only looks for a nonzero entry; there is no
// magnitude heuristic since no rounding can occur.

#include <optional>
#include <utility>
#include <vector>

#include "treejacobi/eigen_support.hpp"

namespace treejacobi {

/// Brings `m` to reduced row echelon form in place and returns the pivot
/// column of each nonzero row.
template <typename Scalar>
std::vector<Eigen::Index> row_reduce(Matrix<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) {
        if (!is_zero(m(row, j))) m(r, j) -= f * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
Eigen::Index rank(Matrix<Scalar> m) {
  return static_cast<Eigen::Index>(row_reduce(m).size());
}

/// Basis of the right kernel, one vector per column.
template <typename Scalar>
Matrix<Scalar> nullspace(Matrix<Scalar> m) {
  const auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  }
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(m.cols(), static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const auto fc = free_cols[k];
    const auto kk = static_cast<Eigen::Index>(k);
    basis(fc, kk) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(pivots[r], kk) = -m(static_cast<Eigen::Index>(r), fc);
    }
  }
  return basis;
}

/// Solves a square system; empty when the matrix is singular.
template <typename Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  const Eigen::Index n = a.rows();
  Matrix<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  const auto pivots = row_reduce(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n || (n > 0 && pivots.back() != n - 1)) {
    return std::nullopt;
  }
  return Vector<Scalar>(aug.col(n));
}

}  // namespace treejacobi
