#include "equideriv/matrix.hpp"

#include <algorithm>

#include "equideriv/errors.hpp"

namespace equideriv {

namespace kernels {

namespace serial {

RowEchelon row_reduce(ScalarMatrix m) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    const Scalar inv = m(row, col).inverse();
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const Scalar f = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

}  // namespace serial

namespace parallel {

RowEchelon row_reduce(ScalarMatrix m) {
  RowEchelon out;
  std::size_t row = 0;
  std::vector<std::size_t> support;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    const Scalar inv = m(row, col).inverse();
    support.clear();
    for (std::size_t c = col; c < m.cols(); ++c) {
      if (m(row, c).is_zero()) continue;
      if (!inv.is_one()) m(row, c) *= inv;
      support.push_back(c);
    }
    const long nrows = static_cast<long>(m.rows());
    const std::size_t pivot_row = row;
#pragma omp parallel for schedule(dynamic, 8)
    for (long rr = 0; rr < nrows; ++rr) {
      const auto r = static_cast<std::size_t>(rr);
      if (r == pivot_row || m(r, col).is_zero()) continue;
      const Scalar f = m(r, col);
      for (std::size_t c : support) m(r, c) -= f * m(pivot_row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

}  // namespace parallel

RowEchelon row_reduce(ScalarMatrix m) {
  // The sparse-aware variant is used for every size; OpenMP only spawns
  // threads when the region has enough rows to be worth it.
  return parallel::row_reduce(std::move(m));
}

}  // namespace kernels

std::size_t rank(const ScalarMatrix& m) { return row_reduce(m).rank(); }

ScalarMatrix nullspace(const ScalarMatrix& m) {
  RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  ScalarMatrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t f = free_cols[k];
    basis(f, k) = Scalar(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) basis(e.pivots[i], k) = -e.reduced(i, f);
  }
  return basis;
}

ScalarMatrix column_basis(const ScalarMatrix& m) {
  RowEchelon e = row_reduce(m);
  ScalarMatrix out(m.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, k) = m(r, e.pivots[k]);
  return out;
}

ScalarMatrix inverse(const ScalarMatrix& m) {
  if (!m.square()) throw ArithmeticError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  ScalarMatrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < n; ++i) aug(i, n + i) = Scalar(1);
  RowEchelon e = row_reduce(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) throw ArithmeticError("matrix is singular");
  return e.reduced.block(0, n, n, n);
}

CyclotomicScalar determinant(const ScalarMatrix& input) {
  if (!input.square()) throw ArithmeticError("determinant of a non-square matrix");
  ScalarMatrix m = input;
  const std::size_t n = m.rows();
  Scalar det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m(p, col).is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != col) {
      m.swap_rows(p, col);
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = m(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      const Scalar f = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c)
        if (!m(col, c).is_zero()) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

CyclotomicScalar trace(const ScalarMatrix& m) {
  Scalar t;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

std::optional<ScalarMatrix> solve(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const std::size_t n = a.cols();
  ScalarMatrix aug(a.rows(), n + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  RowEchelon e = row_reduce(std::move(aug));
  ScalarMatrix x(n, b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= n) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x(e.pivots[i], c) = e.reduced(i, n + c);
  }
  return x;
}

ScalarMatrix vstack(const std::vector<ScalarMatrix>& parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += p.rows();
  }
  ScalarMatrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    out.set_block(r, 0, p);
    r += p.rows();
  }
  return out;
}

ScalarMatrix hstack(const std::vector<ScalarMatrix>& parts, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw std::invalid_argument("hstack: row mismatch");
    cols += p.cols();
  }
  ScalarMatrix out(rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    out.set_block(0, c, p);
    c += p.cols();
  }
  return out;
}

ScalarMatrix scalar_matrix(const std::vector<std::vector<CyclotomicScalar>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  ScalarMatrix m(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw ValidationError("ragged matrix literal");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace equideriv
