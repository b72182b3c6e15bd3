#include "equideriv/rep.hpp"

#include <algorithm>
#include <numeric>

#include "equideriv/errors.hpp"
#include "equideriv/polynomial.hpp"

namespace equideriv {

Representation::Representation(GroupPtr group, std::vector<ScalarMatrix> matrices, std::string label)
    : Representation(Trusted{}, std::move(group), std::move(matrices), std::move(label)) {
  if (!is_homomorphism())
    throw ValidationError("matrices do not define a group homomorphism" +
                          (label_.empty() ? std::string() : " (" + label_ + ")"));
}

Representation::Representation(Trusted, GroupPtr group, std::vector<ScalarMatrix> matrices, std::string label)
    : group_(std::move(group)), mats_(std::move(matrices)), label_(std::move(label)) {
  if (!group_) throw ValidationError("representation without a group");
  if (mats_.size() != group_->order()) throw ValidationError("representation needs one matrix per group element");
  dim_ = mats_.front().rows();
  for (const auto& m : mats_)
    if (m.rows() != dim_ || m.cols() != dim_)
      throw ValidationError("representation matrices must be square and of equal size");
}

Representation Representation::from_generators(GroupPtr group, std::size_t dim,
                                               const std::map<std::size_t, ScalarMatrix>& images,
                                               std::string label) {
  const FiniteGroup& g = *group;
  for (const auto& [e, m] : images) {
    if (e >= g.order()) throw ValidationError("element index " + std::to_string(e) + " out of range");
    if (m.rows() != dim || m.cols() != dim) throw ValidationError("image of element " + std::to_string(e) + " has the wrong size");
  }
  std::vector<std::optional<ScalarMatrix>> mats(g.order());
  mats[0] = ScalarMatrix::identity(dim);
  std::vector<std::size_t> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t x = queue[head];
    for (const auto& [s, ms] : images) {
      std::size_t y = g.mul(x, s);
      ScalarMatrix my = *mats[x] * ms;
      if (mats[y]) {
        if (!(*mats[y] == my))
          throw ValidationError("generator images do not define a homomorphism" + (label.empty() ? std::string() : " (" + label + ")"));
      } else {
        mats[y] = std::move(my);
        queue.push_back(y);
      }
    }
  }
  if (queue.size() != g.order()) throw ValidationError("given elements do not generate the group");
  std::vector<ScalarMatrix> all;
  all.reserve(g.order());
  for (auto& m : mats) all.push_back(std::move(*m));
  return Representation(std::move(group), std::move(all), std::move(label));
}

Representation Representation::relabeled(std::string label) const {
  Representation r = *this;
  r.label_ = std::move(label);
  return r;
}

bool Representation::is_homomorphism() const {
  const FiniteGroup& g = *group_;
  if (!(mats_[0] == ScalarMatrix::identity(dim_))) return false;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (!(mats_[a] * mats_[b] == mats_[g.mul(a, b)])) return false;
  return true;
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) { return &a == &b || a.table() == b.table(); }

namespace {

void require_same_group(const FiniteGroup& a, const FiniteGroup& b) {
  if (!same_group(a, b)) throw ValidationError("representations are over different groups");
}

}  // namespace

Character character(const Representation& rho) {
  const FiniteGroup& g = *rho.group();
  Character chi{rho.group(), std::vector<CyclotomicScalar>(g.classes().size())};
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    const auto& cls = g.classes()[c];
    chi.values[c] = trace(rho.matrix(cls.front()));
    for (std::size_t i = 1; i < cls.size(); ++i)
      if (!(trace(rho.matrix(cls[i])) == chi.values[c]))
        throw ValidationError("trace is not constant on a conjugacy class; not a homomorphism");
  }
  return chi;
}

CyclotomicScalar inner_product(const Character& chi, const Character& psi) {
  require_same_group(*chi.group, *psi.group);
  const FiniteGroup& g = *chi.group;
  CyclotomicScalar s;
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    const auto& cls = g.classes()[c];
    std::size_t inv_class = g.class_of(g.inverse(cls.front()));
    s += chi.values[c] * psi.values[inv_class] * CyclotomicScalar(static_cast<long>(cls.size()));
  }
  return s / CyclotomicScalar(static_cast<long>(g.order()));
}

Character character_product(const Character& chi, const Character& psi) {
  require_same_group(*chi.group, *psi.group);
  Character out{chi.group, chi.values};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= psi.values[i];
  return out;
}

namespace {

std::size_t as_count(const CyclotomicScalar& v, const char* what) {
  if (!v.is_rational() || v.rational().get_den() != 1 || sgn(v.rational()) < 0)
    throw ValidationError(std::string(what) + " is not a non-negative integer: " + v.to_string());
  return v.rational().get_num().get_ui();
}

}  // namespace

void validate_irreducible_list(const std::vector<Representation>& irreps) {
  if (irreps.empty()) throw ValidationError("irreducible list is empty");
  const FiniteGroup& g = *irreps.front().group();
  std::vector<Character> chars;
  std::size_t dims = 0;
  for (const auto& r : irreps) {
    require_same_group(g, *r.group());
    chars.push_back(character(r));
    dims += r.dim() * r.dim();
  }
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (!inner_product(chars[i], chars[i]).is_one())
      throw ValidationError("representation '" + irreps[i].label() + "' is not irreducible over this field");
    for (std::size_t j = 0; j < i; ++j)
      if (!inner_product(chars[i], chars[j]).is_zero())
        throw ValidationError("irreducibles '" + irreps[i].label() + "' and '" + irreps[j].label() + "' are isomorphic");
  }
  if (dims != g.order()) throw ValidationError("irreducible list is incomplete: sum of squared dimensions is " + std::to_string(dims) + ", group order is " + std::to_string(g.order()));
}

Decomposition decompose(const Representation& rho, const std::vector<Representation>& irreps) {
  validate_irreducible_list(irreps);
  require_same_group(*rho.group(), *irreps.front().group());
  const FiniteGroup& g = *rho.group();
  Character chi = character(rho);
  Decomposition d;
  std::size_t total = 0;
  for (const auto& irr : irreps) {
    Character psi = character(irr);
    std::size_t m = as_count(inner_product(chi, psi), "multiplicity");
    d.multiplicities.push_back(m);
    total += m * irr.dim();
    // p = (dim / |G|) sum_g psi(g^-1) rho(g)
    std::vector<ScalarMatrix> terms;
    terms.reserve(g.order());
    for (std::size_t e = 0; e < g.order(); ++e) terms.push_back(scaled(rho.matrix(e), psi.at(g.inverse(e))));
    ScalarMatrix p = kernels::sum(std::span<const ScalarMatrix>(terms));
    d.projectors.push_back(scaled(std::move(p), CyclotomicScalar(mpq_class(static_cast<long>(irr.dim()), static_cast<long>(g.order())))));
  }
  if (total != rho.dim()) throw ConsistencyError("isotypic dimensions do not add up to the representation dimension");
  return d;
}

bool is_trivial_isotypic(const Representation& rho) {
  Character chi = character(rho);
  Character triv{rho.group(), std::vector<CyclotomicScalar>(chi.values.size(), CyclotomicScalar(1))};
  return inner_product(chi, triv) == CyclotomicScalar(static_cast<long>(rho.dim()));
}

std::size_t multiplicity(const Representation& sigma, const Representation& rho) {
  return as_count(inner_product(character(rho), character(sigma)), "multiplicity");
}

Representation restrict_rep(const Representation& rho, const Subgroup& h) {
  require_same_group(*rho.group(), *h.parent());
  std::vector<ScalarMatrix> mats;
  for (auto m : h.members()) mats.push_back(rho.matrix(m));
  return Representation(Representation::Trusted{}, h.as_group(), std::move(mats), rho.label());
}

Representation tensor_rep(const Representation& a, const Representation& b) {
  require_same_group(*a.group(), *b.group());
  std::vector<ScalarMatrix> mats;
  for (std::size_t e = 0; e < a.group()->order(); ++e) mats.push_back(kronecker(a.matrix(e), b.matrix(e)));
  return Representation(Representation::Trusted{}, a.group(), std::move(mats), a.label() + "*" + b.label());
}

Representation dual_rep(const Representation& rho) {
  const FiniteGroup& g = *rho.group();
  std::vector<ScalarMatrix> mats;
  for (std::size_t e = 0; e < g.order(); ++e) mats.push_back(rho.matrix(g.inverse(e)).transpose());
  return Representation(Representation::Trusted{}, rho.group(), std::move(mats), rho.label() + "^*");
}

Representation direct_sum(const Representation& a, const Representation& b) {
  require_same_group(*a.group(), *b.group());
  std::vector<ScalarMatrix> mats;
  for (std::size_t e = 0; e < a.group()->order(); ++e) mats.push_back(direct_sum(a.matrix(e), b.matrix(e)));
  return Representation(Representation::Trusted{}, a.group(), std::move(mats), a.label() + "+" + b.label());
}

Representation change_basis(const Representation& rho, const ScalarMatrix& t) {
  ScalarMatrix ti = inverse(t);
  std::vector<ScalarMatrix> mats;
  for (const auto& m : rho.matrices()) mats.push_back(t * m * ti);
  return Representation(Representation::Trusted{}, rho.group(), std::move(mats), rho.label());
}

Representation sym_power_rep(const Representation& rho, std::size_t degree) {
  const FiniteGroup& g = *rho.group();
  std::vector<ScalarMatrix> mats;
  mats.reserve(g.order());
  for (std::size_t e = 0; e < g.order(); ++e) mats.push_back(substitution_matrix(rho.matrix(g.inverse(e)), degree));
  return Representation(Representation::Trusted{}, rho.group(), std::move(mats), "A" + std::to_string(degree));
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Representation ext_power_rep(const Representation& rho, std::size_t k) {
  if (k > rho.dim()) return trivial_rep(rho.group(), 0);
  auto basis = subsets(rho.dim(), k);
  std::vector<ScalarMatrix> mats;
  for (const auto& m : rho.matrices()) {
    ScalarMatrix out(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t i = 0; i < basis.size(); ++i) {
        ScalarMatrix minor(k, k);
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) minor(r, c) = m(basis[j][r], basis[i][c]);
        out(j, i) = k == 0 ? CyclotomicScalar(1) : determinant(minor);
      }
    mats.push_back(std::move(out));
  }
  return Representation(Representation::Trusted{}, rho.group(), std::move(mats), "L" + std::to_string(k) + "(" + rho.label() + ")");
}

Representation trivial_rep(const GroupPtr& g, std::size_t dim) {
  return Representation(Representation::Trusted{}, g, std::vector<ScalarMatrix>(g->order(), ScalarMatrix::identity(dim)), "triv");
}

Representation regular_rep(const GroupPtr& g) {
  const std::size_t n = g->order();
  std::vector<ScalarMatrix> mats;
  for (std::size_t e = 0; e < n; ++e) {
    ScalarMatrix m(n, n);
    for (std::size_t h = 0; h < n; ++h) m(g->mul(e, h), h) = CyclotomicScalar(1);
    mats.push_back(std::move(m));
  }
  return Representation(Representation::Trusted{}, g, std::move(mats), "regular");
}

Representation permutation_rep(const GroupPtr& g) {
  if (!g->permutations()) throw ValidationError("group was not given by permutations");
  std::vector<ScalarMatrix> mats;
  for (const auto& p : *g->permutations()) {
    ScalarMatrix m(p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m(p[i], i) = CyclotomicScalar(1);
    mats.push_back(std::move(m));
  }
  return Representation(Representation::Trusted{}, g, std::move(mats), "perm");
}

std::vector<std::vector<CyclotomicScalar>> linear_characters(const FiniteGroup& g) {
  // A linear character is fixed by its values on the generators; enumerate
  // all root-of-unity assignments and keep the consistent ones.
  const std::size_t e = g.exponent();
  const auto& gens = g.generators();
  std::vector<std::size_t> orders;
  for (auto s : gens) orders.push_back(g.element_order(s));
  std::vector<std::size_t> choice(gens.size(), 0);  // value of gen i is z_e^(choice * e / order)
  std::vector<std::vector<CyclotomicScalar>> out;
  for (;;) {
    std::vector<long> expo(g.order(), -1);
    expo[0] = 0;
    std::vector<std::size_t> queue{0};
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head) {
      std::size_t x = queue[head];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        std::size_t y = g.mul(x, gens[i]);
        long v = static_cast<long>((expo[x] + choice[i] * (e / orders[i])) % e);
        if (expo[y] < 0) {
          expo[y] = v;
          queue.push_back(y);
        } else if (expo[y] != v) {
          ok = false;
          break;
        }
      }
    }
    if (ok)
      for (std::size_t a = 0; a < g.order() && ok; ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
          if (static_cast<std::size_t>(expo[g.mul(a, b)]) != (expo[a] + expo[b]) % e) {
            ok = false;
            break;
          }
    if (ok) {
      std::vector<CyclotomicScalar> vals;
      for (auto x : expo) vals.push_back(CyclotomicScalar::root_of_unity(static_cast<unsigned>(e), x));
      out.push_back(std::move(vals));
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == orders[i]) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return out;
}

Representation one_dim_rep(const GroupPtr& g, const std::vector<CyclotomicScalar>& values, std::string label) {
  std::vector<ScalarMatrix> mats;
  for (const auto& v : values) mats.push_back(ScalarMatrix(1, 1, v));
  return Representation(g, std::move(mats), std::move(label));
}

}  // namespace equideriv
