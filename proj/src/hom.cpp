#include <map>

#include "equideriv/eqmod.hpp"
#include "equideriv/errors.hpp"

namespace equideriv {

namespace {

void require_irreducible(const Representation& r, const char* which) {
  Character chi = character(r);
  if (!(inner_product(chi, chi) == CyclotomicScalar(1)))
    throw ValidationError(std::string(which) + " representation " + r.label() + " is not irreducible");
}

std::size_t as_count(const CyclotomicScalar& x, const char* what) {
  if (!x.is_rational() || x.rational().get_den() != 1 || sgn(x.rational()) < 0)
    throw ConsistencyError(std::string(what) + " is not a non-negative integer: " + x.to_string());
  return x.rational().get_num().get_ui();
}

}  // namespace

std::size_t hom_generators(const Representation& action, const Representation& v, std::size_t i,
                           const Representation& w, std::size_t j) {
  require_irreducible(v, "source");
  require_irreducible(w, "target");
  if (!same_group(*v.group(), *w.group()) || !same_group(*v.group(), *action.group()))
    throw ValidationError("hom_generators: representations over different groups");
  if (j > i) return 0;
  Character chi_v = character(v), chi_w = character(w);
  if (i == j) return inner_product(chi_v, chi_w) == CyclotomicScalar(1) ? 1 : 0;
  Character chi_a = character(sym_power_rep(action, i - j));
  return as_count(inner_product(chi_v, character_product(chi_a, chi_w)), "multiplicity");
}

std::vector<PolyMatrix> equivariant_maps(const Representation& action, const Representation& v, std::size_t i,
                                         const Representation& w, std::size_t j) {
  if (!same_group(*v.group(), *w.group()) || !same_group(*v.group(), *action.group()))
    throw ValidationError("equivariant_maps: representations over different groups");
  if (j > i) return {};
  const std::size_t d = i - j, n = action.dim();
  const std::size_t dv = v.dim(), dw = w.dim(), nm = monomial_count(n, d);
  const std::size_t unknowns = dw * dv * nm;
  auto idx = [&](std::size_t r, std::size_t c, std::size_t m) { return (r * dv + c) * nm + m; };
  const auto& gens = v.group()->generators();

  ScalarMatrix eq(gens.size() * unknowns, unknowns);
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const std::size_t g = gens[s];
    const ScalarMatrix& rw = w.matrix(g);
    const ScalarMatrix& rv = v.matrix(g);
    ScalarMatrix sub = substitution_matrix(action.matrix(g), d);
    for (std::size_t r = 0; r < dw; ++r)
      for (std::size_t c = 0; c < dv; ++c)
        for (std::size_t m = 0; m < nm; ++m) {
          const std::size_t row = s * unknowns + idx(r, c, m);
          // (rho_W F)[r][c][m]
          for (std::size_t r2 = 0; r2 < dw; ++r2)
            if (!rw(r, r2).is_zero()) eq(row, idx(r2, c, m)) += rw(r, r2);
          // - (F(rho x) rho_V)[r][c][m]
          for (std::size_t c2 = 0; c2 < dv; ++c2) {
            if (rv(c2, c).is_zero()) continue;
            for (std::size_t m2 = 0; m2 < nm; ++m2)
              if (!sub(m, m2).is_zero()) eq(row, idx(r, c2, m2)) -= sub(m, m2) * rv(c2, c);
          }
        }
  }
  ScalarMatrix ker = nullspace(eq);
  std::vector<PolyMatrix> out;
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    PolyMatrix f(dw, dv);
    for (std::size_t r = 0; r < dw; ++r)
      for (std::size_t c = 0; c < dv; ++c) {
        std::vector<CyclotomicScalar> coeffs(nm);
        for (std::size_t m = 0; m < nm; ++m) coeffs[m] = ker(idx(r, c, m), k);
        f(r, c) = from_coefficients(coeffs, n, d);
      }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<PolyMatrix> hom_basis(const BlockModule& source, const BlockModule& target) {
  if (!same_rep(source.action(), target.action())) throw ValidationError("hom_basis: different variable actions");
  std::vector<PolyMatrix> out;
  for (std::size_t b = 0; b < target.blocks().size(); ++b)
    for (std::size_t a = 0; a < source.blocks().size(); ++a) {
      const Block& sa = source.blocks()[a];
      const Block& tb = target.blocks()[b];
      for (auto& f : equivariant_maps(source.action(), sa.rep, sa.shift, tb.rep, tb.shift)) {
        PolyMatrix full(target.rank(), source.rank());
        full.set_block(target.offset(b), source.offset(a), f);
        out.push_back(std::move(full));
      }
    }
  return out;
}

namespace {

// Coordinates of Hom^l = sum_p Hom(C^p, D^{p+l}) in the monomial basis of
// every matrix entry.
class HomSpace {
 public:
  HomSpace(const EquivariantComplex& c, const EquivariantComplex& d, int l) : c_(c), d_(d), l_(l) {
    for (int p : c.positions()) {
      const BlockModule& t = d.term(p + l);
      if (t.rank() == 0) continue;
      offsets_.emplace(p, size_);
      const BlockModule& s = c.term(p);
      for (std::size_t r = 0; r < t.rank(); ++r)
        for (std::size_t col = 0; col < s.rank(); ++col)
          if (s.degrees()[col] >= t.degrees()[r])
            size_ += monomial_count(c.action().dim(), s.degrees()[col] - t.degrees()[r]);
    }
  }

  std::size_t size() const { return size_; }
  std::vector<int> positions() const {
    std::vector<int> out;
    for (const auto& [p, o] : offsets_) out.push_back(p);
    return out;
  }

  void add(int p, const PolyMatrix& f, ScalarMatrix& out, std::size_t column) const {
    auto it = offsets_.find(p);
    if (it == offsets_.end()) {
      if (!is_zero_matrix(f)) throw ConsistencyError("Hom complex: component outside the space");
      return;
    }
    const BlockModule& s = c_.term(p);
    const BlockModule& t = d_.term(p + l_);
    const std::size_t n = c_.action().dim();
    std::size_t at = it->second;
    for (std::size_t r = 0; r < t.rank(); ++r)
      for (std::size_t col = 0; col < s.rank(); ++col) {
        if (s.degrees()[col] < t.degrees()[r]) {
          if (!f(r, col).is_zero()) throw ConsistencyError("Hom complex: entry of negative degree");
          continue;
        }
        const std::size_t deg = s.degrees()[col] - t.degrees()[r];
        auto v = coefficient_vector(f(r, col), n, deg);
        for (std::size_t k = 0; k < v.size(); ++k)
          if (!v[k].is_zero()) out(at + k, column) += v[k];
        at += v.size();
      }
  }

 private:
  const EquivariantComplex& c_;
  const EquivariantComplex& d_;
  int l_;
  std::map<int, std::size_t> offsets_;
  std::size_t size_ = 0;
};

struct HomLevel {
  std::vector<std::pair<int, PolyMatrix>> basis;
};

HomLevel hom_level(const EquivariantComplex& c, const EquivariantComplex& d, int l) {
  HomLevel out;
  for (int p : c.positions()) {
    const BlockModule& t = d.term(p + l);
    if (t.rank() == 0) continue;
    for (auto& f : hom_basis(c.term(p), t)) out.basis.emplace_back(p, std::move(f));
  }
  return out;
}

// Rank of delta: Hom^l -> Hom^{l+1}, (delta f)_p = d_D f_p - (-1)^l f_{p+1} d_C.
std::size_t delta_rank(const EquivariantComplex& c, const EquivariantComplex& d, int l, const HomLevel& level) {
  if (level.basis.empty()) return 0;
  HomSpace next(c, d, l + 1);
  if (next.size() == 0) return 0;
  ScalarMatrix m(next.size(), level.basis.size());
  const bool odd = (l % 2) != 0;
  for (std::size_t k = 0; k < level.basis.size(); ++k) {
    const auto& [p, f] = level.basis[k];
    next.add(p, d.differential(p + l) * f, m, k);
    PolyMatrix back = f * c.differential(p - 1);
    next.add(p - 1, odd ? back : -back, m, k);
  }
  return rank(m);
}

}  // namespace

std::size_t hom_complexes(const EquivariantComplex& c, const EquivariantComplex& d, int l) {
  if (!same_rep(c.action(), d.action())) throw ValidationError("hom_complexes: different variable actions");
  HomLevel here = hom_level(c, d, l);
  if (here.basis.empty()) return 0;
  HomLevel before = hom_level(c, d, l - 1);
  const std::size_t r_out = delta_rank(c, d, l, here);
  const std::size_t r_in = delta_rank(c, d, l - 1, before);
  if (r_out + r_in > here.basis.size()) throw ConsistencyError("Hom complex ranks exceed the dimension");
  return here.basis.size() - r_out - r_in;
}

}  // namespace equideriv
