#pragma once

// Random inputs and brute-force oracles shared by the unit and acceptance tests.
// The oracles deliberately avoid the library routine they check.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "equideriv/descent.hpp"
#include "equideriv/eqmod.hpp"
#include "equideriv/group.hpp"
#include "equideriv/matrix.hpp"
#include "equideriv/polynomial.hpp"
#include "equideriv/rep.hpp"

namespace testing_support {

using namespace equideriv;

inline std::vector<std::string> all_builtin_names() {
  std::vector<std::string> out{"trivial", "S2", "S3", "D4", "Klein"};
  for (int n = 1; n <= 12; ++n) out.push_back("C" + std::to_string(n));
  return out;
}

inline CyclotomicScalar random_rational(std::mt19937& rng, long lo = -4, long hi = 4) {
  std::uniform_int_distribution<long> num(lo, hi), den(1, 3);
  return CyclotomicScalar(mpq_class(num(rng), den(rng)));
}

inline CyclotomicScalar random_cyclotomic(std::mt19937& rng, unsigned order) {
  CyclotomicScalar x = random_rational(rng);
  std::uniform_int_distribution<long> e(1, static_cast<long>(order));
  for (int k = 0; k < 2; ++k) x += random_rational(rng) * CyclotomicScalar::root_of_unity(order, e(rng));
  return x;
}

// Invertible by construction: unit lower times unit upper triangular.
inline ScalarMatrix random_invertible(std::mt19937& rng, std::size_t n) {
  ScalarMatrix l = ScalarMatrix::identity(n), u = ScalarMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = random_rational(rng, -2, 2);
      u(j, i) = random_rational(rng, -2, 2);
    }
  return l * u;
}

// Trace of every element's matrix, computed without the Character type.
inline std::vector<CyclotomicScalar> element_traces(const Representation& r) {
  std::vector<CyclotomicScalar> out;
  for (std::size_t g = 0; g < r.group()->order(); ++g) {
    CyclotomicScalar t;
    for (std::size_t i = 0; i < r.dim(); ++i) t += r.matrix(g)(i, i);
    out.push_back(t);
  }
  return out;
}

// <a, b> = 1/|G| sum over elements of a(g) * conj(b(g)).
inline CyclotomicScalar pairing(const std::vector<CyclotomicScalar>& a, const std::vector<CyclotomicScalar>& b) {
  CyclotomicScalar s;
  for (std::size_t g = 0; g < a.size(); ++g) s += a[g] * b[g].conjugate();
  return s * CyclotomicScalar(mpq_class(1, static_cast<long>(a.size())));
}

// Trace of g on A_d via Newton's identities: the complete homogeneous
// symmetric functions of the eigenvalues of M, from power sums tr(M^k).
inline CyclotomicScalar sym_trace(const ScalarMatrix& m, std::size_t d) {
  const std::size_t n = m.rows();
  std::vector<CyclotomicScalar> p(n + 1);
  ScalarMatrix pw = ScalarMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    pw = pw * m;
    for (std::size_t i = 0; i < n; ++i) p[k] += pw(i, i);
  }
  std::vector<CyclotomicScalar> e(n + 1);
  e[0] = CyclotomicScalar(1);
  for (std::size_t k = 1; k <= n; ++k) {
    CyclotomicScalar s;
    for (std::size_t i = 1; i <= k; ++i) {
      CyclotomicScalar term = e[k - i] * p[i];
      s += (i % 2 == 1) ? term : -term;
    }
    e[k] = s * CyclotomicScalar(mpq_class(1, static_cast<long>(k)));
  }
  std::vector<CyclotomicScalar> h(d + 1);
  h[0] = CyclotomicScalar(1);
  for (std::size_t k = 1; k <= d; ++k) {
    CyclotomicScalar s;
    for (std::size_t i = 1; i <= std::min(k, n); ++i) {
      CyclotomicScalar term = e[i] * h[k - i];
      s += (i % 2 == 1) ? term : -term;
    }
    h[k] = s;
  }
  return h[d];
}

// dim Hom_G(V (x) A(-i), W (x) A(-j)) as the rank of the Reynolds average on
// the space Hom(V, W (x) A_{i-j}), built from explicit action matrices.
inline std::size_t reynolds_hom_dim(const Representation& action, const Representation& v, std::size_t i,
                                    const Representation& w, std::size_t j) {
  if (j > i) return 0;
  const FiniteGroup& g = *action.group();
  const std::size_t k = i - j;
  ScalarMatrix total;
  for (std::size_t x = 0; x < g.order(); ++x) {
    // f -> (rho_W (x) S^k(g)) f rho_V(g)^-1 on vec(f), row-major over (target, source).
    ScalarMatrix tgt = kronecker(w.matrix(x), substitution_matrix(action.matrix(g.inverse(x)), k));
    ScalarMatrix src = v.matrix(g.inverse(x)).transpose();
    ScalarMatrix op = kronecker(tgt, src);
    total = x == 0 ? op : total + op;
  }
  return rank(total);
}

// Random representation of dimension at most max_dim: a random sum of
// irreducibles conjugated by a random invertible matrix.
inline Representation random_rep(std::mt19937& rng, const GroupPtr& g, const std::vector<Representation>& irreps,
                                 std::size_t max_dim, std::vector<std::size_t>* mult = nullptr) {
  std::uniform_int_distribution<std::size_t> pick(0, irreps.size() - 1);
  std::vector<std::size_t> m(irreps.size(), 0);
  std::optional<Representation> acc;
  std::uniform_int_distribution<std::size_t> target_dim(1, max_dim);
  const std::size_t want = target_dim(rng);
  std::size_t dim = 0;
  for (int tries = 0; tries < 64 && dim < want; ++tries) {
    std::size_t k = pick(rng);
    if (dim + irreps[k].dim() > max_dim) continue;
    ++m[k];
    dim += irreps[k].dim();
    acc = acc ? direct_sum(*acc, irreps[k]) : irreps[k];
  }
  if (!acc) {
    acc = trivial_rep(g);
    m[0] = 1;
  }
  if (mult) *mult = m;
  return change_basis(*acc, random_invertible(rng, acc->dim()));
}

inline Polynomial random_homogeneous(std::mt19937& rng, std::size_t nvars, std::size_t degree) {
  Polynomial f;
  std::bernoulli_distribution keep(0.6);
  for (const auto& e : monomials(nvars, degree))
    if (keep(rng)) f += Polynomial::monomial(e, random_rational(rng, -2, 2));
  return f;
}

struct RandomRaw {
  RawEquivariantModule module;
  BlockModule source;  // the block module it was disguised from
};

// A block module disguised by a random degree-respecting change of basis:
// a constant mix within each degree, a unipotent polynomial part raising
// degree, and a shuffle of the generators.
inline RandomRaw random_raw_module(std::mt19937& rng, const Representation& action,
                                   const std::vector<Representation>& irreps, std::size_t max_gens,
                                   std::size_t max_degree) {
  std::uniform_int_distribution<std::size_t> pick(0, irreps.size() - 1), deg(0, max_degree);
  std::vector<Block> blocks;
  std::size_t rank = 0;
  std::uniform_int_distribution<std::size_t> want_gens(1, max_gens);
  const std::size_t want = want_gens(rng);
  for (int tries = 0; tries < 32 && rank < want; ++tries) {
    const Representation& r = irreps[pick(rng)];
    if (rank + r.dim() > max_gens) continue;
    blocks.push_back({deg(rng), r});
    rank += r.dim();
  }
  if (blocks.empty()) blocks.push_back({0, trivial_rep(action.group())});
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.shift < b.shift; });
  BlockModule m(action, blocks);
  const auto& degrees = m.degrees();
  const std::size_t n = m.rank();

  ScalarMatrix mix = ScalarMatrix::identity(n);
  for (std::size_t a = 0; a < n;) {
    std::size_t b = a;
    while (b < n && degrees[b] == degrees[a]) ++b;
    mix.set_block(a, a, random_invertible(rng, b - a));
    a = b;
  }
  PolyMatrix nil(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (degrees[r] < degrees[c]) nil(r, c) = random_homogeneous(rng, m.nvars(), degrees[c] - degrees[r]);
  PolyMatrix unip = to_poly(ScalarMatrix::identity(n)) + nil;
  PolyMatrix unip_inv = to_poly(ScalarMatrix::identity(n));
  PolyMatrix power = unip_inv;
  for (std::size_t k = 1; k < n; ++k) {
    power = -(power * nil);
    unip_inv = unip_inv + power;
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  ScalarMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) q(perm[i], i) = CyclotomicScalar(1);

  PolyMatrix p = unip * to_poly(mix) * to_poly(q);
  PolyMatrix pinv = to_poly(q.transpose()) * to_poly(inverse(mix)) * unip_inv;
  std::vector<std::size_t> shuffled(n);
  for (std::size_t i = 0; i < n; ++i) shuffled[i] = degrees[perm[i]];
  auto mats = conjugate_action(as_raw(m), p, pinv);
  return {RawEquivariantModule(action, shuffled, mats), m};
}

// The six curated descent cases.
struct DescentCase {
  std::string name;
  BlockModule module;
  Space space;
  bool expected;
};

inline std::vector<DescentCase> descent_suite() {
  GroupPtr s2 = builtin_group("S2"), c2 = builtin_group("C2"), c3 = builtin_group("C3");
  Representation swap = builtin_rep("perm", s2);
  Representation triv = builtin_rep("triv", s2), sign = builtin_rep("sign", s2);
  Representation minus = builtin_rep("chi1", c2);
  Representation c3_diag = direct_sum(builtin_rep("chi1", c3), builtin_rep("chi2", c3));
  std::vector<DescentCase> out;
  out.push_back({"triv (x) A, swap plane", BlockModule(swap, {{0, triv}}), Space::affine, true});
  out.push_back({"sign (x) A, swap plane", BlockModule(swap, {{0, sign}}), Space::affine, false});
  out.push_back({"regular (x) A, C2 by -1 on a line", BlockModule(minus, {{0, builtin_rep("regular", c2)}}),
                 Space::affine, false});
  out.push_back({"triv (x) A(-1), P1 with swap", BlockModule(swap, {{1, triv}}), Space::projective, false});
  out.push_back({"triv (x) A, P1 with swap", BlockModule(swap, {{0, triv}}), Space::projective, true});
  out.push_back({"chi1 (x) A, C3 diagonal on the plane", BlockModule(c3_diag, {{0, builtin_rep("chi1", c3)}}),
                 Space::affine, false});
  return out;
}

}  // namespace testing_support
