#pragma once

#include <map>
#include <optional>
#include <vector>

#include "equideriv/polynomial.hpp"
#include "equideriv/rep.hpp"

namespace equideriv {

/// Summand V (x) A(-shift) of a block module.
struct Block {
  std::size_t shift = 0;
  Representation rep;
};

/// Graded free equivariant module in normal form, sum of V_a (x) A(-a).
///
/// Generators are numbered block by block; inside a block they follow the
/// basis of the block's representation. An element is a column vector of
/// polynomials and g acts by v -> R(g) (g.v) with R(g) the block diagonal
/// matrix of the block representations.
class BlockModule {
 public:
  BlockModule() = default;
  BlockModule(Representation action, std::vector<Block> blocks);

  const GroupPtr& group() const noexcept { return action_.group(); }
  const Representation& action() const noexcept { return action_; }
  std::size_t nvars() const noexcept { return action_.dim(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t rank() const noexcept { return degrees_.size(); }
  /// Degree of each generator.
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  /// First generator index of each block.
  std::size_t offset(std::size_t block) const { return offsets_.at(block); }
  /// Block diagonal matrix of the block representations at g.
  ScalarMatrix generator_matrix(std::size_t g) const;

  /// Same action, same shifts and identical block matrices.
  friend bool operator==(const BlockModule& a, const BlockModule& b);

 private:
  Representation action_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> degrees_;
  std::vector<std::size_t> offsets_;
};

/// Free module with arbitrary degree-respecting action on its generators:
/// g.e_i = sum_j R(g)_{ji} e_j with R(g)_{ji} homogeneous of degree
/// deg(e_i) - deg(e_j), zero when that is negative.
class RawEquivariantModule {
 public:
  /// One matrix per group element; validates degrees and the cocycle
  /// identity R(gh) = R(g) (g.R(h)).
  RawEquivariantModule(Representation action, std::vector<std::size_t> degrees, std::vector<PolyMatrix> matrices);
  /// Extends matrices given on generators through the cocycle identity.
  static RawEquivariantModule from_generators(Representation action, std::vector<std::size_t> degrees,
                                              const std::map<std::size_t, PolyMatrix>& images);

  const GroupPtr& group() const noexcept { return action_.group(); }
  const Representation& action() const noexcept { return action_; }
  std::size_t nvars() const noexcept { return action_.dim(); }
  std::size_t rank() const noexcept { return degrees_.size(); }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  const PolyMatrix& matrix(std::size_t g) const { return mats_.at(g); }
  const std::vector<PolyMatrix>& matrices() const noexcept { return mats_; }

 private:
  Representation action_;
  std::vector<std::size_t> degrees_;
  std::vector<PolyMatrix> mats_;
};

/// Equal groups and identical matrices.
bool same_rep(const Representation& a, const Representation& b);

/// g.F for a matrix of polynomials: F(rho(g)^-1 x).
PolyMatrix act_on_entries(const Representation& action, std::size_t g, const PolyMatrix& f);

/// Action matrices after the change of basis e'_k = sum_i P_{ik} e_i:
/// P^-1 R(g) (g.P).
std::vector<PolyMatrix> conjugate_action(const RawEquivariantModule& m, const PolyMatrix& p,
                                         const PolyMatrix& p_inverse);

/// The block module viewed as a raw module.
RawEquivariantModule as_raw(const BlockModule& m);

struct NormalForm {
  BlockModule module;
  PolyMatrix change_of_basis;  // columns: new generators in the old basis
  PolyMatrix inverse;
};

/// Equivariant splitting by group averaging, one generator degree at a time.
/// Blocks come out sorted by shift, one block per generator degree.
NormalForm normalize_module(const RawEquivariantModule& m);

/// Determinant of a small polynomial matrix by cofactor expansion.
Polynomial determinant(const PolyMatrix& m);

/// Dimension of Hom(V (x) A(-i), W (x) A(-j)) from the multiplicity table.
/// V and W must be irreducible.
std::size_t hom_generators(const Representation& action, const Representation& v, std::size_t i,
                           const Representation& w, std::size_t j);
/// Basis of equivariant dim W x dim V matrices of degree-(i - j) forms,
/// found by solving rho_W(g) F(x) = F(rho(g) x) rho_V(g) on generators of G.
/// Works for any V and W.
std::vector<PolyMatrix> equivariant_maps(const Representation& action, const Representation& v, std::size_t i,
                                         const Representation& w, std::size_t j);
/// Basis of equivariant degree-preserving maps between block modules.
std::vector<PolyMatrix> hom_basis(const BlockModule& source, const BlockModule& target);

/// Validates rho_T(g) D(x) = D(rho(g) x) rho_S(g) for all g and the entry
/// degrees forced by the generator degrees; throws ValidationError.
void check_morphism(const BlockModule& source, const BlockModule& target, const PolyMatrix& d,
                    const std::string& what);
bool is_equivariant(const BlockModule& source, const BlockModule& target, const PolyMatrix& d);

/// Bounded cohomological complex: the differential at p maps term p to p+1.
class EquivariantComplex {
 public:
  EquivariantComplex() = default;
  /// Validates homogeneity, equivariance and d^2 = 0. Missing terms are
  /// zero modules, missing differentials zero maps.
  EquivariantComplex(Representation action, std::map<int, BlockModule> terms,
                     std::map<int, PolyMatrix> differentials = {});

  const Representation& action() const noexcept { return action_; }
  const GroupPtr& group() const noexcept { return action_.group(); }
  /// Positions with a nonzero term.
  std::vector<int> positions() const;
  const BlockModule& term(int p) const;
  PolyMatrix differential(int p) const;
  const std::map<int, BlockModule>& terms() const noexcept { return terms_; }

  /// Single block module placed at position p.
  static EquivariantComplex single(const BlockModule& m, int p = 0);

  friend bool operator==(const EquivariantComplex& a, const EquivariantComplex& b);

 private:
  Representation action_;
  std::map<int, BlockModule> terms_;
  std::map<int, PolyMatrix> diffs_;
  BlockModule zero_;
};

/// Degree-0 chain map between complexes, f_p: C^p -> D^p.
struct ChainMap {
  EquivariantComplex source;
  EquivariantComplex target;
  std::map<int, PolyMatrix> components;
};

/// Throws ValidationError unless f is equivariant and commutes with d.
void check_chain_map(const ChainMap& f);
ChainMap identity_map(const EquivariantComplex& c);

/// (C[k])^p = C^{p+k}, differentials multiplied by (-1)^k.
EquivariantComplex shift(const EquivariantComplex& c, int k);
/// Cone(f)^p = C^{p+1} + D^p with d = [[-d_C, 0], [f, d_D]].
EquivariantComplex cone(const ChainMap& f);

/// Lambda^k U (x) A(-k) at position -k, k = 0..n+1, where U = A_1 is the
/// span of the variables; d(e_I) = sum_r (-1)^r x_{i_r} e_{I - i_r}.
EquivariantComplex koszul_complex(const Representation& action);

/// Dimension of H^l of the Hom complex, i.e. chain maps C -> D[l] modulo
/// homotopy.
std::size_t hom_complexes(const EquivariantComplex& c, const EquivariantComplex& d, int l);

struct HomologyPiece {
  int position = 0;
  std::size_t dim = 0;
  std::size_t slice_dim = 0;  // dimension of the term in this degree
  std::optional<Representation> rep;
};

/// Homology of the internal-degree slice, one entry per position of C;
/// the induced representation is computed when the homology is nonzero.
std::vector<HomologyPiece> graded_homology(const EquivariantComplex& c, std::size_t degree);

/// Degree-d slice of a block module: basis (generator, monomial) with the
/// generator index major. Returns the G-action on it at element g.
ScalarMatrix slice_action(const BlockModule& m, std::size_t degree, std::size_t g);
std::size_t slice_dim(const BlockModule& m, std::size_t degree);
/// Matrix of the map induced by d on degree-d slices.
ScalarMatrix slice_map(const BlockModule& source, const BlockModule& target, const PolyMatrix& d,
                       std::size_t degree);

}  // namespace equideriv
