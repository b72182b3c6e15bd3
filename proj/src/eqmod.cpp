#include "equideriv/eqmod.hpp"

#include <deque>

#include "equideriv/errors.hpp"

namespace equideriv {

bool same_rep(const Representation& a, const Representation& b) {
  return same_group(*a.group(), *b.group()) && a.matrices() == b.matrices();
}

namespace {

void require_same_action(const Representation& a, const Representation& b, const std::string& what) {
  if (!same_rep(a, b)) throw ValidationError(what + ": objects use different variable actions");
}

// Entry (j, i) of a map between generators of degrees src[i] and tgt[j].
void check_degrees(const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt, const PolyMatrix& d,
                   const std::string& what) {
  if (d.rows() != tgt.size() || d.cols() != src.size())
    throw ValidationError(what + ": matrix is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                          ", expected " + std::to_string(tgt.size()) + "x" + std::to_string(src.size()));
  for (std::size_t j = 0; j < tgt.size(); ++j)
    for (std::size_t i = 0; i < src.size(); ++i) {
      const Polynomial& f = d(j, i);
      if (f.is_zero()) continue;
      if (src[i] < tgt[j] || !f.is_homogeneous(src[i] - tgt[j]))
        throw ValidationError(what + ": entry (" + std::to_string(j) + ", " + std::to_string(i) + ") = " +
                              f.to_string() + " is not homogeneous of degree " +
                              std::to_string(static_cast<long>(src[i]) - static_cast<long>(tgt[j])));
    }
}

void check_variables(const PolyMatrix& d, std::size_t nvars, const std::string& what) {
  for (const auto& f : d.data())
    if (f.variable_count() > nvars)
      throw ValidationError(what + ": polynomial " + f.to_string() + " uses more than " + std::to_string(nvars) +
                            " variables");
}

}  // namespace

BlockModule::BlockModule(Representation action, std::vector<Block> blocks)
    : action_(std::move(action)), blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    if (!same_group(*b.rep.group(), *action_.group()))
      throw ValidationError("block representation " + b.rep.label() + " is over a different group");
    offsets_.push_back(degrees_.size());
    degrees_.insert(degrees_.end(), b.rep.dim(), b.shift);
  }
}

ScalarMatrix BlockModule::generator_matrix(std::size_t g) const {
  ScalarMatrix out(rank(), rank());
  for (std::size_t b = 0; b < blocks_.size(); ++b) out.set_block(offsets_[b], offsets_[b], blocks_[b].rep.matrix(g));
  return out;
}

bool operator==(const BlockModule& a, const BlockModule& b) {
  if (!same_rep(a.action_, b.action_) || a.blocks_.size() != b.blocks_.size()) return false;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i)
    if (a.blocks_[i].shift != b.blocks_[i].shift || !same_rep(a.blocks_[i].rep, b.blocks_[i].rep)) return false;
  return true;
}

PolyMatrix act_on_entries(const Representation& action, std::size_t g, const PolyMatrix& f) {
  return substitute(f, action.matrix(action.group()->inverse(g)));
}

RawEquivariantModule::RawEquivariantModule(Representation action, std::vector<std::size_t> degrees,
                                           std::vector<PolyMatrix> matrices)
    : action_(std::move(action)), degrees_(std::move(degrees)), mats_(std::move(matrices)) {
  const FiniteGroup& g = *action_.group();
  if (mats_.size() != g.order())
    throw ValidationError("raw module needs one action matrix per group element (" + std::to_string(g.order()) + ")");
  for (std::size_t e = 0; e < g.order(); ++e) {
    const std::string what = "action matrix of element " + std::to_string(e);
    check_degrees(degrees_, degrees_, mats_[e], what);
    check_variables(mats_[e], nvars(), what);
  }
  if (!(mats_[0] == PolyMatrix::identity(rank()))) throw ValidationError("identity element does not act trivially");
  // R(s h) = R(s) (s.R(h)) for generators s and all h implies the identity
  // for every pair.
  for (std::size_t s : g.generators())
    for (std::size_t h = 0; h < g.order(); ++h)
      if (!(mats_[g.mul(s, h)] == mats_[s] * act_on_entries(action_, s, mats_[h])))
        throw ValidationError("action matrices are not a group action (fails at elements " + std::to_string(s) +
                              ", " + std::to_string(h) + ")");
}

RawEquivariantModule RawEquivariantModule::from_generators(Representation action, std::vector<std::size_t> degrees,
                                                           const std::map<std::size_t, PolyMatrix>& images) {
  const FiniteGroup& g = *action.group();
  std::vector<std::optional<PolyMatrix>> mats(g.order());
  mats[0] = PolyMatrix::identity(degrees.size());
  std::vector<std::size_t> gens;
  for (const auto& [s, m] : images) {
    if (s >= g.order()) throw ValidationError("element index " + std::to_string(s) + " out of range");
    gens.push_back(s);
  }
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t h = queue.front();
    queue.pop_front();
    for (std::size_t s : gens) {
      std::size_t sh = g.mul(s, h);
      PolyMatrix m = images.at(s) * act_on_entries(action, s, *mats[h]);
      if (!mats[sh]) {
        mats[sh] = std::move(m);
        queue.push_back(sh);
      } else if (!(*mats[sh] == m)) {
        throw ValidationError("generator images do not extend to a group action (element " + std::to_string(sh) +
                              ")");
      }
    }
  }
  std::vector<PolyMatrix> all;
  for (std::size_t e = 0; e < g.order(); ++e) {
    if (!mats[e]) throw ValidationError("given elements do not generate the group");
    all.push_back(std::move(*mats[e]));
  }
  return RawEquivariantModule(std::move(action), std::move(degrees), std::move(all));
}

std::vector<PolyMatrix> conjugate_action(const RawEquivariantModule& m, const PolyMatrix& p,
                                         const PolyMatrix& p_inverse) {
  std::vector<PolyMatrix> out;
  for (std::size_t g = 0; g < m.group()->order(); ++g)
    out.push_back(p_inverse * m.matrix(g) * act_on_entries(m.action(), g, p));
  return out;
}

RawEquivariantModule as_raw(const BlockModule& m) {
  std::vector<PolyMatrix> mats;
  for (std::size_t g = 0; g < m.group()->order(); ++g) mats.push_back(to_poly(m.generator_matrix(g)));
  return RawEquivariantModule(m.action(), m.degrees(), std::move(mats));
}

bool is_equivariant(const BlockModule& source, const BlockModule& target, const PolyMatrix& d) {
  for (std::size_t g = 0; g < source.group()->order(); ++g) {
    PolyMatrix lhs = to_poly(target.generator_matrix(g)) * d;
    PolyMatrix rhs = substitute(d, source.action().matrix(g)) * to_poly(source.generator_matrix(g));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

void check_morphism(const BlockModule& source, const BlockModule& target, const PolyMatrix& d,
                    const std::string& what) {
  require_same_action(source.action(), target.action(), what);
  check_degrees(source.degrees(), target.degrees(), d, what);
  check_variables(d, source.nvars(), what);
  if (!is_equivariant(source, target, d)) throw ValidationError(what + ": map is not equivariant");
}

EquivariantComplex::EquivariantComplex(Representation action, std::map<int, BlockModule> terms,
                                       std::map<int, PolyMatrix> differentials)
    : action_(std::move(action)), zero_(action_, {}) {
  for (auto& [p, m] : terms) {
    require_same_action(action_, m.action(), "term at position " + std::to_string(p));
    if (m.rank() > 0) terms_.emplace(p, std::move(m));
  }
  for (auto& [p, d] : differentials) {
    const std::string what = "differential at position " + std::to_string(p);
    check_morphism(term(p), term(p + 1), d, what);
    if (!is_zero_matrix(d)) diffs_.emplace(p, std::move(d));
  }
  for (const auto& [p, d] : diffs_) {
    auto next = diffs_.find(p + 1);
    if (next != diffs_.end() && !is_zero_matrix(next->second * d))
      throw ValidationError("d^2 != 0 at position " + std::to_string(p));
  }
}

std::vector<int> EquivariantComplex::positions() const {
  std::vector<int> out;
  for (const auto& [p, m] : terms_) out.push_back(p);
  return out;
}

const BlockModule& EquivariantComplex::term(int p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? zero_ : it->second;
}

PolyMatrix EquivariantComplex::differential(int p) const {
  auto it = diffs_.find(p);
  if (it != diffs_.end()) return it->second;
  return PolyMatrix(term(p + 1).rank(), term(p).rank());
}

EquivariantComplex EquivariantComplex::single(const BlockModule& m, int p) {
  return EquivariantComplex(m.action(), {{p, m}});
}

bool operator==(const EquivariantComplex& a, const EquivariantComplex& b) {
  return same_rep(a.action_, b.action_) && a.terms_ == b.terms_ && a.diffs_ == b.diffs_;
}

void check_chain_map(const ChainMap& f) {
  require_same_action(f.source.action(), f.target.action(), "chain map");
  for (const auto& [p, m] : f.components)
    if (f.source.term(p).rank() == 0 && f.target.term(p).rank() == 0 && (m.rows() || m.cols()))
      throw ValidationError("chain map has a component at empty position " + std::to_string(p));
  auto component = [&](int p) {
    auto it = f.components.find(p);
    return it != f.components.end() ? it->second : PolyMatrix(f.target.term(p).rank(), f.source.term(p).rank());
  };
  std::vector<int> ps = f.source.positions();
  for (int p : f.target.positions()) ps.push_back(p);
  for (int p : ps) {
    PolyMatrix fp = component(p);
    check_morphism(f.source.term(p), f.target.term(p), fp, "chain map component at " + std::to_string(p));
    if (!(f.target.differential(p) * fp == component(p + 1) * f.source.differential(p)))
      throw ValidationError("chain map does not commute with the differentials at position " + std::to_string(p));
  }
}

ChainMap identity_map(const EquivariantComplex& c) {
  ChainMap f{c, c, {}};
  for (int p : c.positions()) f.components.emplace(p, PolyMatrix::identity(c.term(p).rank()));
  return f;
}

EquivariantComplex shift(const EquivariantComplex& c, int k) {
  std::map<int, BlockModule> terms;
  std::map<int, PolyMatrix> diffs;
  const bool odd = (k % 2) != 0;
  for (int p : c.positions()) {
    terms.emplace(p - k, c.term(p));
    PolyMatrix d = c.differential(p);
    diffs.emplace(p - k, odd ? -d : d);
  }
  return EquivariantComplex(c.action(), std::move(terms), std::move(diffs));
}

namespace {

BlockModule concat(const BlockModule& a, const BlockModule& b) {
  std::vector<Block> blocks = a.blocks();
  blocks.insert(blocks.end(), b.blocks().begin(), b.blocks().end());
  return BlockModule(a.action(), std::move(blocks));
}

}  // namespace

EquivariantComplex cone(const ChainMap& f) {
  check_chain_map(f);
  const auto& c = f.source;
  const auto& d = f.target;
  auto component = [&](int p) {
    auto it = f.components.find(p);
    return it != f.components.end() ? it->second : PolyMatrix(d.term(p).rank(), c.term(p).rank());
  };
  std::vector<int> ps;
  for (int p : c.positions()) ps.push_back(p - 1);
  for (int p : d.positions()) ps.push_back(p);
  std::map<int, BlockModule> terms;
  std::map<int, PolyMatrix> diffs;
  for (int p : ps) {
    if (terms.count(p)) continue;
    terms.emplace(p, concat(c.term(p + 1), d.term(p)));
  }
  for (const auto& [p, m] : terms) {
    const std::size_t c1 = c.term(p + 1).rank(), d0 = d.term(p).rank();
    const std::size_t c2 = c.term(p + 2).rank(), d1 = d.term(p + 1).rank();
    PolyMatrix out(c2 + d1, c1 + d0);
    out.set_block(0, 0, -c.differential(p + 1));
    out.set_block(c2, 0, component(p + 1));
    out.set_block(c2, c1, d.differential(p));
    diffs.emplace(p, std::move(out));
  }
  return EquivariantComplex(c.action(), std::move(terms), std::move(diffs));
}

EquivariantComplex koszul_complex(const Representation& action) {
  const std::size_t n = action.dim();
  if (n == 0) throw ValidationError("Koszul complex needs at least one variable");
  Representation u = sym_power_rep(action, 1);
  std::map<int, BlockModule> terms;
  std::map<int, PolyMatrix> diffs;
  for (std::size_t k = 0; k <= n; ++k) {
    Representation lam = ext_power_rep(u, k).relabeled("L" + std::to_string(k));
    terms.emplace(-static_cast<int>(k), BlockModule(action, {{k, std::move(lam)}}));
  }
  for (std::size_t k = 1; k <= n; ++k) {
    auto src = subsets(n, k), tgt = subsets(n, k - 1);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t t = 0; t < tgt.size(); ++t) index.emplace(tgt[t], t);
    PolyMatrix d(tgt.size(), src.size());
    for (std::size_t s = 0; s < src.size(); ++s)
      for (std::size_t r = 0; r < k; ++r) {
        auto rest = src[s];
        rest.erase(rest.begin() + static_cast<long>(r));
        Polynomial x = Polynomial::variable(src[s][r]);
        d(index.at(rest), s) = (r % 2 == 0) ? x : -x;
      }
    diffs.emplace(-static_cast<int>(k), std::move(d));
  }
  return EquivariantComplex(action, std::move(terms), std::move(diffs));
}

}  // namespace equideriv
