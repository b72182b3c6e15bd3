#include <map>

#include "equideriv/errors.hpp"
#include "equideriv/rep.hpp"

namespace equideriv {

namespace {

ScalarMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<CyclotomicScalar>> v;
  for (auto r : rows) {
    v.emplace_back();
    for (long x : r) v.back().emplace_back(x);
  }
  return scalar_matrix(v);
}

ScalarMatrix one(const CyclotomicScalar& x) { return ScalarMatrix(1, 1, x); }

// Generator order in the built-in groups follows group.cpp: element 1 is the
// first generator, element 2 the second one (when there is one).
std::size_t gen(const GroupPtr& g, std::size_t i) { return g->generators().at(i); }

Representation sign_pair(const GroupPtr& g, long first, long second, const char* label) {
  return Representation::from_generators(g, 1, {{gen(g, 0), one(first)}, {gen(g, 1), one(second)}}, label);
}

}  // namespace

std::vector<Representation> builtin_irreps(const GroupPtr& g) {
  const std::string& name = g->name();
  // The matrices below are tied to the generator order of the built-in
  // groups, so a user group that merely shares the name is rejected.
  GroupPtr reference;
  try {
    reference = builtin_group(name);
  } catch (const ValidationError&) {
    throw ValidationError("no built-in irreducible list for group '" + name + "'");
  }
  if (!same_group(*g, *reference) || g->generators() != reference->generators())
    throw ValidationError("group '" + name + "' is not the built-in group of that name");
  std::vector<Representation> out;
  if (name == "trivial") {
    out.push_back(trivial_rep(g));
  } else if (name.size() >= 2 && name[0] == 'C') {
    const auto n = static_cast<unsigned>(g->order());
    for (unsigned k = 0; k < n; ++k)
      out.push_back(Representation::from_generators(
          g, 1, {{gen(g, 0), one(CyclotomicScalar::root_of_unity(n, k))}}, "chi" + std::to_string(k)));
  } else if (name == "S2") {
    out.push_back(trivial_rep(g));
    out.push_back(Representation::from_generators(g, 1, {{gen(g, 0), one(-1)}}, "sign"));
  } else if (name == "S3") {
    // generators: transposition (0 1), 3-cycle (0 1 2); std acts on the
    // sum-zero plane with basis e0 - e1, e1 - e2.
    out.push_back(trivial_rep(g));
    out.push_back(sign_pair(g, -1, 1, "sign"));
    out.push_back(Representation::from_generators(
        g, 2, {{gen(g, 0), mat({{-1, 1}, {0, 1}})}, {gen(g, 1), mat({{0, -1}, {1, -1}})}}, "std"));
  } else if (name == "D4") {
    // generators: rotation r, reflection s
    out.push_back(trivial_rep(g));
    out.push_back(sign_pair(g, -1, 1, "r"));
    out.push_back(sign_pair(g, 1, -1, "s"));
    out.push_back(sign_pair(g, -1, -1, "rs"));
    out.push_back(Representation::from_generators(
        g, 2, {{gen(g, 0), mat({{0, -1}, {1, 0}})}, {gen(g, 1), mat({{1, 0}, {0, -1}})}}, "std"));
  } else if (name == "Klein") {
    out.push_back(trivial_rep(g));
    out.push_back(sign_pair(g, -1, 1, "a"));
    out.push_back(sign_pair(g, 1, -1, "b"));
    out.push_back(sign_pair(g, -1, -1, "ab"));
  } else {
    throw ValidationError("no built-in irreducible list for group '" + name + "'");
  }
  return out;
}

Representation builtin_rep(const std::string& full, const GroupPtr& g) {
  std::string name = full;
  if (auto dot = full.find('.'); dot != std::string::npos) {
    std::string prefix = full.substr(0, dot);
    if (prefix != g->name() && !(prefix == "V4" && g->name() == "Klein") && !(prefix == "C1" && g->name() == "trivial"))
      throw ValidationError("representation '" + full + "' belongs to group " + prefix + ", not " + g->name());
    name = full.substr(dot + 1);
  }
  if (name == "regular") return regular_rep(g);
  if (name == "perm" || name == "swap") return permutation_rep(g).relabeled(name);
  if (name == "triv" || name == "trivial") return trivial_rep(g);
  if (name == "neg" && g->order() == 2) return builtin_irreps(g).at(1).relabeled("neg");
  auto irreps = builtin_irreps(g);
  for (auto& r : irreps)
    if (r.label() == name) return r;
  if (name == "sign" && g->name() == "C2") return irreps.at(1).relabeled("sign");
  throw ValidationError("unknown built-in representation '" + full + "'");
}

Representation builtin_action(const GroupPtr& g, std::size_t nvars) {
  if (nvars == 0) throw ValidationError("an action needs at least one variable");
  auto irreps = builtin_irreps(g);
  std::optional<Representation> acc;
  std::size_t used = 0;
  auto add = [&](const Representation& r) {
    acc = acc ? direct_sum(*acc, r) : r;
    used += r.dim();
  };
  // Nontrivial irreducibles first, largest first, then pad with trivial.
  std::vector<const Representation*> order;
  for (const auto& r : irreps)
    if (r.dim() > 1) order.push_back(&r);
  for (const auto& r : irreps)
    if (r.dim() == 1 && !is_trivial_isotypic(r)) order.push_back(&r);
  for (const auto* r : order)
    if (used + r->dim() <= nvars) add(*r);
  while (used < nvars) add(trivial_rep(g));
  return acc->relabeled(g->name() + ".action" + std::to_string(nvars));
}

}  // namespace equideriv
