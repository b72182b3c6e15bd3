#include <map>

#include "equideriv/eqmod.hpp"
#include "equideriv/errors.hpp"

namespace equideriv {

namespace {

// Start of each generator's monomial range in the degree-d slice.
std::vector<std::size_t> slice_offsets(const BlockModule& m, std::size_t degree) {
  std::vector<std::size_t> off(m.rank() + 1, 0);
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const std::size_t a = m.degrees()[i];
    off[i + 1] = off[i] + (a <= degree ? monomial_count(m.nvars(), degree - a) : 0);
  }
  return off;
}

}  // namespace

std::size_t slice_dim(const BlockModule& m, std::size_t degree) { return slice_offsets(m, degree).back(); }

ScalarMatrix slice_action(const BlockModule& m, std::size_t degree, std::size_t g) {
  const std::size_t dim = slice_dim(m, degree);
  ScalarMatrix out(dim, dim);
  const ScalarMatrix& inv = m.action().matrix(m.group()->inverse(g));
  std::map<std::size_t, ScalarMatrix> sym;
  std::size_t at = 0;
  for (const auto& b : m.blocks()) {
    if (b.shift > degree) continue;
    const std::size_t e = degree - b.shift;
    auto it = sym.find(e);
    if (it == sym.end()) it = sym.emplace(e, substitution_matrix(inv, e)).first;
    ScalarMatrix k = kronecker(b.rep.matrix(g), it->second);
    out.set_block(at, at, k);
    at += k.rows();
  }
  return out;
}

ScalarMatrix slice_map(const BlockModule& source, const BlockModule& target, const PolyMatrix& d,
                       std::size_t degree) {
  const std::size_t n = source.nvars();
  auto so = slice_offsets(source, degree), to = slice_offsets(target, degree);
  ScalarMatrix out(to.back(), so.back());
  for (std::size_t i = 0; i < source.rank(); ++i) {
    const std::size_t a = source.degrees()[i];
    if (a > degree) continue;
    auto mons = monomials(n, degree - a);
    for (std::size_t j = 0; j < target.rank(); ++j) {
      const Polynomial& f = d(j, i);
      if (f.is_zero()) continue;
      for (std::size_t m = 0; m < mons.size(); ++m) {
        for (const auto& [e, c] : f.terms()) {
          Exponents prod(std::max(e.size(), mons[m].size()), 0);
          for (std::size_t v = 0; v < e.size(); ++v) prod[v] += e[v];
          for (std::size_t v = 0; v < mons[m].size(); ++v) prod[v] += mons[m][v];
          out(to[j] + monomial_index(prod, n), so[i] + m) += c;
        }
      }
    }
  }
  return out;
}

std::vector<HomologyPiece> graded_homology(const EquivariantComplex& c, std::size_t degree) {
  std::vector<HomologyPiece> out;
  const FiniteGroup& g = *c.group();
  for (int p : c.positions()) {
    const BlockModule& here = c.term(p);
    HomologyPiece piece;
    piece.position = p;
    piece.slice_dim = slice_dim(here, degree);
    ScalarMatrix incoming = slice_map(c.term(p - 1), here, c.differential(p - 1), degree);
    ScalarMatrix outgoing = slice_map(here, c.term(p + 1), c.differential(p), degree);
    const std::size_t r_in = rank(incoming), r_out = rank(outgoing);
    if (r_in + r_out > piece.slice_dim) throw ConsistencyError("homology ranks exceed the slice dimension");
    piece.dim = piece.slice_dim - r_in - r_out;
    if (piece.dim > 0) {
      ScalarMatrix ker = nullspace(outgoing);
      ScalarMatrix img = column_basis(incoming);
      // Complement of the image inside the kernel, taken among kernel columns.
      ScalarMatrix both = hstack({img, ker}, piece.slice_dim);
      RowEchelon e = row_reduce(both);
      std::vector<ScalarMatrix> cols{img};
      for (auto pc : e.pivots)
        if (pc >= img.cols()) cols.push_back(ker.block(0, pc - img.cols(), ker.rows(), 1));
      ScalarMatrix basis = hstack(cols, piece.slice_dim);
      ScalarMatrix comp = basis.block(0, img.cols(), basis.rows(), piece.dim);
      std::vector<ScalarMatrix> images;
      for (std::size_t x = 0; x < g.order(); ++x) images.push_back(slice_action(here, degree, x) * comp);
      auto coords = solve(basis, hstack(images, piece.slice_dim));
      if (!coords) throw ConsistencyError("group action does not preserve the kernel");
      std::vector<ScalarMatrix> mats;
      for (std::size_t x = 0; x < g.order(); ++x)
        mats.push_back(coords->block(img.cols(), x * piece.dim, piece.dim, piece.dim));
      piece.rep = Representation(Representation::Trusted{}, c.group(), std::move(mats),
                                 "H" + std::to_string(p) + "_" + std::to_string(degree));
    }
    out.push_back(std::move(piece));
  }
  return out;
}

}  // namespace equideriv
