#include "equideriv/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "equideriv/errors.hpp"

namespace equideriv {

namespace {

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

ElementMask to_mask(const std::vector<std::size_t>& members) {
  ElementMask m = 0;
  for (auto x : members) m |= ElementMask{1} << x;
  return m;
}

std::vector<std::size_t> from_mask(ElementMask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 64; ++i)
    if ((m >> i) & 1U) out.push_back(i);
  return out;
}

}  // namespace

FiniteGroup FiniteGroup::from_permutations(const std::vector<Permutation>& generators, std::string name) {
  std::size_t degree = generators.empty() ? 0 : generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != degree) throw ValidationError("permutation generators act on sets of different sizes");
    if (!is_permutation(g)) throw ValidationError("generator is not a permutation");
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);

  std::vector<Permutation> elems{id};
  std::map<Permutation, std::size_t> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : generators) {
      Permutation p = compose(elems[head], g);
      if (index.count(p)) continue;
      if (elems.size() == kMaxGroupOrder)
        throw LimitError("group closure exceeds " + std::to_string(kMaxGroupOrder) + " elements");
      index.emplace(p, elems.size());
      elems.push_back(std::move(p));
    }
  }

  FiniteGroup grp;
  grp.name_ = std::move(name);
  const std::size_t n = elems.size();
  grp.mul_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) grp.mul_[a][b] = index.at(compose(elems[a], elems[b]));
  for (const auto& g : generators) {
    std::size_t gi = index.at(g);
    if (gi != 0 && std::find(grp.generators_.begin(), grp.generators_.end(), gi) == grp.generators_.end())
      grp.generators_.push_back(gi);
  }
  grp.perms_ = std::move(elems);
  grp.finish();
  return grp;
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<std::size_t>>& table, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw ValidationError("group table is empty");
  if (n > kMaxGroupOrder) throw LimitError("group order exceeds " + std::to_string(kMaxGroupOrder));
  for (const auto& row : table) {
    if (row.size() != n) throw ValidationError("group table is not square");
    for (auto v : row)
      if (v >= n) throw ValidationError("group table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a) throw ValidationError("element 0 of a group table must be the identity");
  FiniteGroup grp;
  grp.name_ = std::move(name);
  grp.mul_ = table;
  grp.inv_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) grp.inv_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (grp.inv_[a] == n) throw ValidationError("group table: element " + std::to_string(a) + " has no inverse");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw ValidationError("group table is not associative");
  // Greedy generating set.
  std::vector<std::size_t> span{0};
  for (std::size_t a = 1; a < n; ++a) {
    if (std::find(span.begin(), span.end(), a) != span.end()) continue;
    grp.generators_.push_back(a);
    span = closure(grp, grp.generators_);
  }
  grp.finish();
  return grp;
}

void FiniteGroup::finish() {
  const std::size_t n = mul_.size();
  inv_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (mul_[a][b] == 0) inv_[a] = b;
  class_of_.assign(n, n);
  classes_.clear();
  for (std::size_t x = 0; x < n; ++x) {
    if (class_of_[x] != n) continue;
    std::set<std::size_t> cls;
    for (std::size_t g = 0; g < n; ++g) cls.insert(conjugate(g, x));
    for (auto y : cls) class_of_[y] = classes_.size();
    classes_.emplace_back(cls.begin(), cls.end());
  }
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (std::size_t a = 0; a < order(); ++a) e = std::lcm(e, element_order(a));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::verify_axioms() const {
  const std::size_t n = order();
  for (std::size_t a = 0; a < n; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) return false;
    if (mul(a, inv_[a]) != 0 || mul(inv_[a], a) != 0) return false;
    for (std::size_t b = 0; b < n; ++b) {
      if (mul(a, b) >= n) return false;
      for (std::size_t c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    }
  }
  return true;
}

std::vector<std::size_t> closure(const FiniteGroup& g, const std::vector<std::size_t>& seeds) {
  std::vector<bool> in(g.order(), false);
  std::vector<std::size_t> out{0};
  in[0] = true;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (auto s : seeds) {
      std::size_t p = g.mul(out[head], s);
      if (!in[p]) {
        in[p] = true;
        out.push_back(p);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g) { return g.classes(); }

Subgroup::Subgroup(GroupPtr parent, std::vector<std::size_t> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  mask_ = to_mask(members_);
  const FiniteGroup& p = *parent_;
  if (members_.empty() || members_.front() != 0) throw ValidationError("subgroup must contain the identity");
  std::map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < members_.size(); ++i) local[members_[i]] = i;
  std::vector<std::vector<std::size_t>> table(members_.size(), std::vector<std::size_t>(members_.size()));
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = 0; j < members_.size(); ++j) {
      auto it = local.find(p.mul(members_[i], members_[j]));
      if (it == local.end()) throw ValidationError("subset is not closed under multiplication");
      table[i][j] = it->second;
    }
  std::string name = (p.name().empty() ? std::string("G") : p.name()) + "<";
  for (std::size_t i = 0; i < members_.size(); ++i) name += (i ? "," : "") + std::to_string(members_[i]);
  name += ">";
  group_ = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(table, name));
}

bool are_conjugate(const FiniteGroup& g, ElementMask a, ElementMask b) {
  auto ma = from_mask(a);
  for (std::size_t x = 0; x < g.order(); ++x) {
    ElementMask c = 0;
    for (auto m : ma) c |= ElementMask{1} << g.conjugate(x, m);
    if (c == b) return true;
  }
  return false;
}

namespace {

std::vector<ElementMask> subgroup_masks(const FiniteGroup& g) {
  if (g.order() > kMaxGroupOrder) throw LimitError("subgroup enumeration is limited to order 64");
  std::set<ElementMask> found;
  for (std::size_t a = 0; a < g.order(); ++a) found.insert(to_mask(closure(g, {a})));
  // Join pairs until no new subgroup appears.
  std::vector<ElementMask> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<ElementMask> next;
    std::vector<ElementMask> all(found.begin(), found.end());
    for (auto f : frontier)
      for (auto h : all) {
        ElementMask u = f | h;
        if (u == f || u == h) continue;
        auto gens = from_mask(u);
        ElementMask j = to_mask(closure(g, gens));
        if (found.insert(j).second) next.push_back(j);
      }
    frontier = std::move(next);
  }
  std::vector<ElementMask> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](ElementMask a, ElementMask b) {
    int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    if (pa != pb) return pa < pb;
    return from_mask(a) < from_mask(b);
  });
  return out;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  std::vector<Subgroup> out;
  for (auto m : subgroup_masks(*g)) out.emplace_back(g, from_mask(m));
  return out;
}

std::vector<Subgroup> subgroups_up_to_conjugacy(const GroupPtr& g) {
  std::vector<ElementMask> reps;
  for (auto m : subgroup_masks(*g)) {
    bool seen = false;
    for (auto r : reps)
      if (__builtin_popcountll(r) == __builtin_popcountll(m) && are_conjugate(*g, r, m)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(m);
  }
  std::vector<Subgroup> out;
  for (auto m : reps) out.emplace_back(g, from_mask(m));
  return out;
}

std::vector<std::size_t> derived_subgroup(const FiniteGroup& g) {
  std::set<std::size_t> comms;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      comms.insert(g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b))));
  return closure(g, std::vector<std::size_t>(comms.begin(), comms.end()));
}

// Built-ins.

namespace {

Permutation cycle_perm(std::size_t n, const std::vector<std::size_t>& cycle) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

}  // namespace

GroupPtr trivial_group() {
  static const GroupPtr g = std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations({}, "trivial"));
  return g;
}

GroupPtr cyclic_group(std::size_t n) {
  if (n == 0 || n > 12) throw ValidationError("built-in cyclic groups are C1..C12");
  if (n == 1) return trivial_group();
  static const std::vector<GroupPtr> cache = [] {
    std::vector<GroupPtr> v(13);
    for (std::size_t k = 2; k <= 12; ++k) {
      std::vector<std::size_t> cyc(k);
      std::iota(cyc.begin(), cyc.end(), 0);
      v[k] = std::make_shared<const FiniteGroup>(
          FiniteGroup::from_permutations({cycle_perm(k, cyc)}, "C" + std::to_string(k)));
    }
    return v;
  }();
  return cache[n];
}

GroupPtr symmetric_group(std::size_t n) {
  static const GroupPtr s2 = std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations({{1, 0}}, "S2"));
  // transposition (0 1) and 3-cycle (0 1 2)
  static const GroupPtr s3 = std::make_shared<const FiniteGroup>(
      FiniteGroup::from_permutations({{1, 0, 2}, cycle_perm(3, {0, 1, 2})}, "S3"));
  if (n == 2) return s2;
  if (n == 3) return s3;
  throw ValidationError("built-in symmetric groups are S2 and S3");
}

GroupPtr dihedral_group_d4() {
  // rotation (0 1 2 3) and the reflection swapping 1 and 3
  static const GroupPtr g = std::make_shared<const FiniteGroup>(
      FiniteGroup::from_permutations({cycle_perm(4, {0, 1, 2, 3}), {0, 3, 2, 1}}, "D4"));
  return g;
}

GroupPtr klein_four_group() {
  static const GroupPtr g = std::make_shared<const FiniteGroup>(
      FiniteGroup::from_permutations({{1, 0, 3, 2}, {2, 3, 0, 1}}, "Klein"));
  return g;
}

GroupPtr builtin_group(const std::string& name) {
  if (name == "trivial" || name == "C1") return trivial_group();
  if (name == "S2") return symmetric_group(2);
  if (name == "S3") return symmetric_group(3);
  if (name == "D4") return dihedral_group_d4();
  if (name == "Klein" || name == "V4") return klein_four_group();
  if (name.size() >= 2 && name[0] == 'C') {
    std::size_t n = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') throw ValidationError("unknown built-in group '" + name + "'");
      n = n * 10 + static_cast<std::size_t>(name[i] - '0');
      if (n > 1000) break;
    }
    if (n >= 1 && n <= 12) return cyclic_group(n);
  }
  throw ValidationError("unknown built-in group '" + name + "'");
}

std::vector<std::string> builtin_group_names() {
  std::vector<std::string> names{"trivial"};
  for (int n = 2; n <= 12; ++n) names.push_back("C" + std::to_string(n));
  names.insert(names.end(), {"S2", "S3", "D4", "Klein"});
  return names;
}

}  // namespace equideriv
