#include "equideriv/descent.hpp"

#include <algorithm>

#include "equideriv/errors.hpp"

namespace equideriv {

std::string to_string(Space s) { return s == Space::affine ? "affine" : "projective"; }

Space parse_space(const std::string& s) {
  if (s == "affine") return Space::affine;
  if (s == "projective") return Space::projective;
  throw ValidationError("unknown space '" + s + "' (expected affine or projective)");
}

namespace {

bool is_trivial_character(const std::vector<CyclotomicScalar>& values) {
  return std::all_of(values.begin(), values.end(), [](const CyclotomicScalar& x) { return x.is_one(); });
}

std::string values_label(const std::vector<CyclotomicScalar>& values) {
  std::string out = "chi[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i].to_string();
  return out + "]";
}

// Common kernel of rho(h) - chi(h) over the members of h.
ScalarMatrix eigenspace(const Representation& action, const Subgroup& h, const std::vector<CyclotomicScalar>& chi) {
  const std::size_t n = action.dim();
  std::vector<ScalarMatrix> parts;
  for (std::size_t k = 0; k < h.order(); ++k) {
    ScalarMatrix m = action.matrix(h.members()[k]);
    for (std::size_t i = 0; i < n; ++i) m(i, i) -= chi[k];
    parts.push_back(std::move(m));
  }
  return nullspace(vstack(parts, n));
}

}  // namespace

std::string linear_character_label(const std::vector<CyclotomicScalar>& values, const Subgroup& h,
                                   const std::vector<Representation>& irreps) {
  if (is_trivial_character(values)) return "triv";
  const bool whole = h.order() == h.parent()->order();
  for (const auto& r : irreps) {
    if (r.dim() != 1 || r.label().empty()) continue;
    bool match = true;
    for (std::size_t k = 0; k < h.order() && match; ++k) match = r.matrix(h.members()[k])(0, 0) == values[k];
    if (match) return whole ? r.label() : r.label() + "|H";
  }
  return values_label(values);
}

std::vector<FixedStratum> fixed_strata(const Representation& action, const Subgroup& h, Space mode,
                                       const std::vector<Representation>& irreps) {
  if (!same_group(*h.parent(), *action.group())) throw ValidationError("subgroup of a different group");
  std::vector<FixedStratum> out;
  if (mode == Space::affine) {
    std::vector<CyclotomicScalar> ones(h.order(), CyclotomicScalar(1));
    out.push_back(FixedStratum{h, mode, eigenspace(action, h, ones), ones, "fixed"});
    return out;
  }
  for (auto& chi : linear_characters(*h.as_group())) {
    ScalarMatrix basis = eigenspace(action, h, chi);
    if (basis.cols() == 0) continue;
    std::string label = linear_character_label(chi, h, irreps);
    out.push_back(FixedStratum{h, mode, std::move(basis), std::move(chi), std::move(label)});
  }
  return out;
}

Representation fiber_rep(const Block& b, const FixedStratum& s) {
  Representation res = restrict_rep(b.rep, s.subgroup);
  if (s.mode == Space::affine || b.shift == 0) return res;
  std::vector<CyclotomicScalar> twist;
  for (const auto& x : s.character) twist.push_back(x.pow(static_cast<long>(b.shift)));
  return tensor_rep(res, one_dim_rep(s.subgroup.as_group(), twist));
}

Representation fiber_rep(const BlockModule& e, const FixedStratum& s) {
  if (e.blocks().empty()) return trivial_rep(s.subgroup.as_group(), 0);
  std::optional<Representation> acc;
  for (const auto& b : e.blocks()) {
    Representation f = fiber_rep(b, s);
    acc = acc ? direct_sum(*acc, f) : f;
  }
  return *acc;
}

namespace {

struct Component {
  std::string name;
  std::size_t multiplicity;
};

std::size_t count(const CyclotomicScalar& x) {
  if (!x.is_rational() || x.rational().get_den() != 1 || sgn(x.rational()) < 0)
    throw ConsistencyError("multiplicity is not a non-negative integer: " + x.to_string());
  return x.rational().get_num().get_ui();
}

// First nontrivial irreducible constituent of a fiber that is not trivial-isotypic.
Component offending_component(const Representation& fiber, const Subgroup& h,
                              const std::vector<Representation>& irreps) {
  Character chi = character(fiber);
  if (h.order() == h.parent()->order() && !irreps.empty()) {
    for (const auto& r : irreps) {
      if (is_trivial_isotypic(r)) continue;
      Representation on_h = restrict_rep(r, h);
      std::size_t m = count(inner_product(chi, character(on_h)));
      if (m > 0) return {r.label(), m};
    }
  }
  for (const auto& lin : linear_characters(*h.as_group())) {
    if (is_trivial_character(lin)) continue;
    std::size_t m = count(inner_product(chi, character(one_dim_rep(h.as_group(), lin))));
    if (m > 0) return {linear_character_label(lin, h, irreps), m};
  }
  std::size_t triv = count(inner_product(chi, character(trivial_rep(h.as_group()))));
  return {"nonlinear", fiber.dim() - triv};
}

template <class Visit>
DescentCertificate run_descent(const Representation& action, Space mode, const std::vector<Representation>& irreps,
                               Visit&& visit_terms) {
  DescentCertificate cert;
  for (const auto& h : subgroups_up_to_conjugacy(action.group())) {
    if (h.is_trivial()) continue;
    ++cert.subgroups_checked;
    for (const auto& s : fixed_strata(action, h, mode, irreps)) {
      ++cert.strata_checked;
      if (auto w = visit_terms(s)) {
        Component c = offending_component(w->fiber, h, irreps);
        w->component = c.name;
        w->multiplicity = c.multiplicity;
        cert.descends = false;
        cert.witness = std::move(w);
        return cert;
      }
    }
  }
  return cert;
}

std::optional<DescentWitness> first_bad_block(const BlockModule& e, const FixedStratum& s, std::optional<int> pos) {
  for (std::size_t b = 0; b < e.blocks().size(); ++b) {
    Representation f = fiber_rep(e.blocks()[b], s);
    if (!is_trivial_isotypic(f)) return DescentWitness{s, pos, b, e.blocks()[b].shift, {}, 0, std::move(f)};
  }
  return std::nullopt;
}

}  // namespace

DescentCertificate descends(const BlockModule& e, Space mode, const std::vector<Representation>& irreps) {
  return run_descent(e.action(), mode, irreps,
                     [&](const FixedStratum& s) { return first_bad_block(e, s, std::nullopt); });
}

DescentCertificate descends(const EquivariantComplex& c, Space mode, const std::vector<Representation>& irreps) {
  return run_descent(c.action(), mode, irreps, [&](const FixedStratum& s) -> std::optional<DescentWitness> {
    for (int p : c.positions())
      if (auto w = first_bad_block(c.term(p), s, p)) return w;
    return std::nullopt;
  });
}

bool is_invariant(const Polynomial& f, const Representation& action) {
  for (std::size_t g = 0; g < action.group()->order(); ++g)
    if (!(f.substitute(action.matrix(g)) == f)) return false;
  return true;
}

PolyMatrix descend_morphism(const BlockModule& source, const BlockModule& target, const PolyMatrix& phi) {
  check_morphism(source, target, phi, "morphism");
  if (!descends(source, Space::affine).descends) throw ValidationError("morphism source does not descend");
  if (!descends(target, Space::affine).descends) throw ValidationError("morphism target does not descend");
  for (std::size_t r = 0; r < phi.rows(); ++r)
    for (std::size_t c = 0; c < phi.cols(); ++c)
      if (!is_invariant(phi(r, c), source.action()))
        throw ConsistencyError("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") = " +
                               phi(r, c).to_string() + " of an equivariant map between descending modules is "
                               "not invariant");
  return phi;
}

std::size_t default_oracle_bound(const BlockModule& e) {
  std::size_t top = 0;
  for (const auto& b : e.blocks()) top = std::max(top, b.shift);
  return 2 * top + e.group()->order();
}

namespace {

// Columns spanning E_d^G, as vectors in the slice basis.
ScalarMatrix invariant_basis(const BlockModule& e, std::size_t d) {
  const FiniteGroup& g = *e.group();
  std::vector<ScalarMatrix> terms;
  for (std::size_t x = 0; x < g.order(); ++x) terms.push_back(slice_action(e, d, x));
  ScalarMatrix avg = kernels::sum(std::span<const ScalarMatrix>(terms));
  return column_basis(avg);
}

// Embeds u * v in E_d for v in E_j (slice vectors) and u a degree d-j monomial.
class SliceProduct {
 public:
  SliceProduct(const BlockModule& e) : e_(e) {}

  void add_products(const ScalarMatrix& inv, std::size_t j, std::size_t d, std::vector<ScalarMatrix>& cols) const {
    const std::size_t n = e_.nvars();
    auto lo = offsets(j), hi = offsets(d);
    auto mults = monomials(n, d - j);
    for (std::size_t k = 0; k < inv.cols(); ++k)
      for (const auto& u : mults) {
        ScalarMatrix col(hi.back(), 1);
        for (std::size_t i = 0; i < e_.rank(); ++i) {
          const std::size_t a = e_.degrees()[i];
          if (a > j) continue;
          auto mons = monomials(n, j - a);
          for (std::size_t m = 0; m < mons.size(); ++m) {
            const CyclotomicScalar& c = inv(lo[i] + m, k);
            if (c.is_zero()) continue;
            Exponents prod(std::max(u.size(), mons[m].size()), 0);
            for (std::size_t v = 0; v < u.size(); ++v) prod[v] += u[v];
            for (std::size_t v = 0; v < mons[m].size(); ++v) prod[v] += mons[m][v];
            col(hi[i] + monomial_index(prod, n), 0) += c;
          }
        }
        cols.push_back(std::move(col));
      }
  }

 private:
  std::vector<std::size_t> offsets(std::size_t degree) const {
    std::vector<std::size_t> off(e_.rank() + 1, 0);
    for (std::size_t i = 0; i < e_.rank(); ++i) {
      const std::size_t a = e_.degrees()[i];
      off[i + 1] = off[i] + (a <= degree ? monomial_count(e_.nvars(), degree - a) : 0);
    }
    return off;
  }

  const BlockModule& e_;
};

}  // namespace

OracleReport invariant_oracle(const BlockModule& e, std::optional<std::size_t> bound, Space mode) {
  OracleReport report;
  report.mode = mode;
  report.bound = bound.value_or(default_oracle_bound(e));
  std::vector<std::size_t> tested, sources;
  if (mode == Space::affine) {
    for (std::size_t d = 0; d <= report.bound; ++d) tested.push_back(d);
    sources = tested;
  } else {
    // Invariant sections in degrees divisible by |G| come from twists that
    // descend, so only those are used.
    const std::size_t step = e.group()->order();
    std::size_t top = 0;
    for (const auto& b : e.blocks()) top = std::max(top, b.shift);
    std::size_t last = std::max(report.bound, top + step);
    last = (last + step - 1) / step * step;
    report.bound = last;
    for (std::size_t d = 0; d <= last; d += step) tested.push_back(d);
    sources = tested;
  }
  std::vector<ScalarMatrix> inv;
  for (std::size_t j : sources) inv.push_back(invariant_basis(e, j));
  SliceProduct prod(e);
  for (std::size_t t = 0; t < tested.size(); ++t) {
    const std::size_t d = tested[t];
    OracleDegree od;
    od.degree = d;
    od.dim = slice_dim(e, d);
    od.invariants = inv[t].cols();
    std::vector<ScalarMatrix> cols;
    for (std::size_t s = 0; s <= t; ++s) prod.add_products(inv[s], sources[s], d, cols);
    od.span = cols.empty() ? 0 : rank(hstack(cols, od.dim));
    report.degrees.push_back(od);
  }
  if (mode == Space::affine) {
    report.deficit = std::any_of(report.degrees.begin(), report.degrees.end(),
                                 [](const OracleDegree& d) { return !d.full(); });
  } else {
    report.deficit = !report.degrees.back().full();
  }
  return report;
}

}  // namespace equideriv
