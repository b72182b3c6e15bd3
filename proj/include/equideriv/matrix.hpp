#pragma once

#include <optional>
#include <vector>

#include "equideriv/dense.hpp"
#include "equideriv/kernels.hpp"
#include "equideriv/scalar.hpp"

namespace equideriv {

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  return kernels::multiply(a, b);
}

template <class T, class S>
Matrix<T> scaled(Matrix<T> m, const S& s) {
  for (auto& x : m.data()) x = x * s;
  return m;
}

template <class T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

/// Kronecker product; row index is (i_a, i_b) with i_a major.
template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& m) {
  for (const auto& x : m.data())
    if (!is_zero(x)) return false;
  return true;
}

// Linear algebra over Q(z_m).

inline RowEchelon row_reduce(ScalarMatrix m) { return kernels::row_reduce(std::move(m)); }
std::size_t rank(const ScalarMatrix& m);
/// Columns form a basis of {v : m v = 0}, in the standard free-variable order.
ScalarMatrix nullspace(const ScalarMatrix& m);
/// Columns form a basis of the column space, chosen among the columns of m.
ScalarMatrix column_basis(const ScalarMatrix& m);
/// Throws ArithmeticError when m is singular.
ScalarMatrix inverse(const ScalarMatrix& m);
CyclotomicScalar determinant(const ScalarMatrix& m);
CyclotomicScalar trace(const ScalarMatrix& m);
/// Some X with a X = b, if one exists.
std::optional<ScalarMatrix> solve(const ScalarMatrix& a, const ScalarMatrix& b);
/// Stacks matrices with equal column counts.
ScalarMatrix vstack(const std::vector<ScalarMatrix>& parts, std::size_t cols);
/// Columns side by side; all with equal row counts.
ScalarMatrix hstack(const std::vector<ScalarMatrix>& parts, std::size_t rows);
/// Parses a JSON-style nested list of literals; used by tests and the CLI.
ScalarMatrix scalar_matrix(const std::vector<std::vector<CyclotomicScalar>>& rows);

}  // namespace equideriv
