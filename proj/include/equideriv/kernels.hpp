#pragma once

// Dense exact kernels. Each kernel has a serial reference implementation and
// an OpenMP implementation; exact arithmetic makes their results identical,
// which the tests check. Library code calls the dispatching wrappers at the
// bottom of this header.

#include <span>
#include <stdexcept>
#include <vector>

#include "equideriv/dense.hpp"
#include "equideriv/scalar.hpp"

namespace equideriv {

inline bool is_zero(const CyclotomicScalar& x) { return x.is_zero(); }

using ScalarMatrix = Matrix<CyclotomicScalar>;

/// Reduced row echelon form with the pivot column of each nonzero row.
struct RowEchelon {
  ScalarMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const noexcept { return pivots.size(); }
};

namespace kernels {

// Below this many multiply-adds the dispatchers stay serial.
inline constexpr std::size_t kParallelWork = 4096;

namespace serial {

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc{};
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = std::move(acc);
    }
  return c;
}

template <class T>
Matrix<T> sum(std::span<const Matrix<T>> terms) {
  if (terms.empty()) throw std::invalid_argument("sum of no matrices");
  Matrix<T> acc = terms.front();
  for (std::size_t t = 1; t < terms.size(); ++t) acc += terms[t];
  return acc;
}

RowEchelon row_reduce(ScalarMatrix m);

}  // namespace serial

namespace parallel {

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    auto crow = c.row(static_cast<std::size_t>(i));
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(static_cast<std::size_t>(i), k);
      if (is_zero(aik)) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (is_zero(brow[j])) continue;
        crow[j] += aik * brow[j];
      }
    }
  }
  return c;
}

template <class T>
Matrix<T> sum(std::span<const Matrix<T>> terms) {
  if (terms.empty()) throw std::invalid_argument("sum of no matrices");
  Matrix<T> acc(terms.front().rows(), terms.front().cols());
  const long n = static_cast<long>(acc.data().size());
#pragma omp parallel for schedule(static)
  for (long e = 0; e < n; ++e) {
    T s{};
    for (const auto& t : terms) {
      const T& x = t.data()[static_cast<std::size_t>(e)];
      if (!is_zero(x)) s += x;
    }
    acc.data()[static_cast<std::size_t>(e)] = std::move(s);
  }
  return acc;
}

RowEchelon row_reduce(ScalarMatrix m);

}  // namespace parallel

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() * a.cols() * b.cols() >= kParallelWork) return parallel::multiply(a, b);
  // The sparse-aware loop is also the faster serial path for small inputs.
  Matrix<T> c(a.rows(), b.cols());
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> sum(std::span<const Matrix<T>> terms) {
  if (!terms.empty() && terms.size() * terms.front().data().size() >= kParallelWork)
    return parallel::sum(terms);
  return serial::sum(terms);
}

RowEchelon row_reduce(ScalarMatrix m);

}  // namespace kernels

}  // namespace equideriv
