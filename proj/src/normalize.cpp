#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "equideriv/eqmod.hpp"
#include "equideriv/errors.hpp"

namespace equideriv {

namespace {

PolyMatrix select_columns(const PolyMatrix& m, const std::vector<std::size_t>& cols) {
  PolyMatrix out(m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(r, cols[c]);
  return out;
}

}  // namespace

NormalForm normalize_module(const RawEquivariantModule& m) {
  const FiniteGroup& g = *m.group();
  const std::size_t n = m.rank();
  const auto& deg = m.degrees();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });

  PolyMatrix p(n, n);
  std::vector<Block> blocks;
  const CyclotomicScalar inv_order = CyclotomicScalar(1) / CyclotomicScalar(static_cast<long>(g.order()));
  std::size_t col = 0;
  for (std::size_t start = 0; start < n;) {
    std::size_t stop = start;
    while (stop < n && deg[order[stop]] == deg[order[start]]) ++stop;
    std::vector<std::size_t> level(order.begin() + static_cast<long>(start), order.begin() + static_cast<long>(stop));
    const std::size_t k = level.size();

    // Action on the generators of this degree modulo lower ones.
    std::vector<ScalarMatrix> q;
    for (std::size_t e = 0; e < g.order(); ++e) {
      ScalarMatrix qe(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) qe(a, b) = m.matrix(e)(level[a], level[b]).constant_term();
      q.push_back(std::move(qe));
    }

    // Averaged splitting: s(e_i) = (1/|G|) sum_g g.e(Q(g^-1) e_i).
    PolyMatrix lifts(n, k);
    for (std::size_t e = 0; e < g.order(); ++e)
      lifts += select_columns(m.matrix(e), level) * to_poly(q[g.inverse(e)]);
    lifts = lifts.map([&](const Polynomial& f) { return f * inv_order; });

    p.set_block(0, col, lifts);
    blocks.push_back({deg[level.front()], Representation(Representation::Trusted{}, m.group(), std::move(q),
                                                          "V" + std::to_string(deg[level.front()]))});
    col += k;
    start = stop;
  }

  // With rows in sorted order P is unipotent block upper triangular, so
  // its inverse is a finite Neumann series.
  PolyMatrix sorted(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) sorted(r, c) = p(order[r], c);
  PolyMatrix nil = sorted - PolyMatrix::identity(n);
  PolyMatrix sorted_inv = PolyMatrix::identity(n), term = PolyMatrix::identity(n);
  for (std::size_t step = 1; step < blocks.size(); ++step) {
    term = -(term * nil);
    if (is_zero_matrix(term)) break;
    sorted_inv += term;
  }
  PolyMatrix p_inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) p_inv(r, order[c]) = sorted_inv(r, c);

  NormalForm out{BlockModule(m.action(), std::move(blocks)), std::move(p), std::move(p_inv)};
  if (!(out.change_of_basis * out.inverse == PolyMatrix::identity(n)))
    throw ConsistencyError("normal form: change of basis inverse is wrong");
  auto conj = conjugate_action(m, out.change_of_basis, out.inverse);
  for (std::size_t e = 0; e < g.order(); ++e)
    if (!(conj[e] == to_poly(out.module.generator_matrix(e))))
      throw ConsistencyError("normal form: conjugated action is not block constant");
  return out;
}

Polynomial determinant(const PolyMatrix& m) {
  if (!m.square()) throw ValidationError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial(1);
  if (n > 20) throw LimitError("polynomial determinant limited to 20x20");
  // Expansion along rows with memoization over the set of used columns.
  std::unordered_map<std::uint32_t, Polynomial> memo;
  auto rec = [&](auto&& self, std::size_t row, std::uint32_t used) -> Polynomial {
    if (row == n) return Polynomial(1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Polynomial acc;
    long sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1U << c)) continue;
      if (!m(row, c).is_zero()) {
        Polynomial minor = self(self, row + 1, used | (1U << c));
        if (!minor.is_zero()) acc += (sign > 0 ? m(row, c) : -m(row, c)) * minor;
      }
      sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(rec, 0, 0);
}

}  // namespace equideriv
