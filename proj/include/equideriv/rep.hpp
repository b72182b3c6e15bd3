#pragma once

#include <map>
#include <string>
#include <vector>

#include "equideriv/group.hpp"
#include "equideriv/matrix.hpp"

namespace equideriv {

/// A finite-dimensional representation: one invertible matrix per element.
class Representation {
 public:
  Representation() = default;
  /// Takes every element's matrix and validates the homomorphism property.
  Representation(GroupPtr group, std::vector<ScalarMatrix> matrices, std::string label = {});

  /// Skips the exhaustive homomorphism check; for matrices that are
  /// homomorphic by construction (tensor products, restrictions, ...).
  struct Trusted {};
  Representation(Trusted, GroupPtr group, std::vector<ScalarMatrix> matrices, std::string label = {});

  /// Extends matrices given on a generating set to the whole group, then
  /// validates. Throws ValidationError if they do not define a homomorphism.
  static Representation from_generators(GroupPtr group, std::size_t dim,
                                        const std::map<std::size_t, ScalarMatrix>& images,
                                        std::string label = {});

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t dim() const noexcept { return dim_; }
  const ScalarMatrix& matrix(std::size_t g) const { return mats_.at(g); }
  const std::vector<ScalarMatrix>& matrices() const noexcept { return mats_; }
  const std::string& label() const noexcept { return label_; }
  Representation relabeled(std::string label) const;

  /// Exhaustive check of rho(g) rho(h) = rho(gh) and rho(e) = 1.
  bool is_homomorphism() const;

 private:
  GroupPtr group_;
  std::size_t dim_ = 0;
  std::vector<ScalarMatrix> mats_;
  std::string label_;
};

/// Class function stored per conjugacy class (in group().classes() order).
struct Character {
  GroupPtr group;
  std::vector<CyclotomicScalar> values;

  const CyclotomicScalar& at(std::size_t element) const { return values[group->class_of(element)]; }
  friend bool operator==(const Character& a, const Character& b) { return a.values == b.values; }
};

bool same_group(const FiniteGroup& a, const FiniteGroup& b);

/// Throws ValidationError if a trace is not constant on a class.
Character character(const Representation& rho);
/// (1/|G|) sum_g chi(g) psi(g^-1).
CyclotomicScalar inner_product(const Character& chi, const Character& psi);
Character character_product(const Character& chi, const Character& psi);

struct Decomposition {
  std::vector<std::size_t> multiplicities;  // per irrep, in input order
  std::vector<ScalarMatrix> projectors;     // isotypic projector per irrep
};

/// Checks that irreps are pairwise non-isomorphic irreducibles whose squared
/// dimensions sum to |G|; throws ValidationError otherwise.
void validate_irreducible_list(const std::vector<Representation>& irreps);
/// Isotypic decomposition against a complete irreducible list.
Decomposition decompose(const Representation& rho, const std::vector<Representation>& irreps);
/// Multiplicity of the trivial representation equals dim.
bool is_trivial_isotypic(const Representation& rho);
/// Multiplicity of irreducible sigma in rho, as an integer.
std::size_t multiplicity(const Representation& sigma, const Representation& rho);

Representation restrict_rep(const Representation& rho, const Subgroup& h);
Representation tensor_rep(const Representation& a, const Representation& b);
Representation dual_rep(const Representation& rho);
Representation direct_sum(const Representation& a, const Representation& b);
/// Conjugates every matrix by t: t rho(g) t^-1.
Representation change_basis(const Representation& rho, const ScalarMatrix& t);

/// Action on degree-d polynomials in the coordinates of the space rho acts
/// on: (g.f)(x) = f(rho(g)^-1 x), on the monomial basis of polynomial.hpp.
Representation sym_power_rep(const Representation& rho, std::size_t degree);
/// k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);
/// Action on the k-th exterior power, basis e_I for k-subsets I in lex order;
/// zero-dimensional when k exceeds the dimension.
Representation ext_power_rep(const Representation& rho, std::size_t k);

Representation trivial_rep(const GroupPtr& g, std::size_t dim = 1);
Representation regular_rep(const GroupPtr& g);
/// Permutation matrices of a permutation group acting on k^n.
Representation permutation_rep(const GroupPtr& g);

/// Linear characters of g as element-indexed values, trivial one first.
std::vector<std::vector<CyclotomicScalar>> linear_characters(const FiniteGroup& g);
Representation one_dim_rep(const GroupPtr& g, const std::vector<CyclotomicScalar>& values, std::string label = {});

// Built-in irreducible lists: "S3" -> {triv, sign, std}, "C4" -> {chi0..chi3},
// "D4" -> {triv, r, s, rs, std}, "Klein" -> {triv, a, b, ab}; a one-letter
// name lists the generators acting by -1.
std::vector<Representation> builtin_irreps(const GroupPtr& g);
/// "S3.std", "C4.chi1", "S2.swap", "S3.perm", "D4.regular", ... .
Representation builtin_rep(const std::string& name, const GroupPtr& g);
/// Variable actions used by the acceptance sweeps: faithful when possible,
/// padded with trivial summands to the requested dimension.
Representation builtin_action(const GroupPtr& g, std::size_t nvars);

}  // namespace equideriv
