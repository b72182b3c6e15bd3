#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equideriv/eqmod.hpp"

namespace equideriv {

/// Affine space k^{n+1} or the projective space of its lines.
enum class Space { affine, projective };

std::string to_string(Space s);
/// "affine" or "projective"; throws ValidationError otherwise.
Space parse_space(const std::string& s);

/// Fixed locus piece of a subgroup H under a linear action.
///
/// Affine: the common fixed subspace (possibly just the origin). Projective:
/// the projectivized eigenspace V_chi for a linear character chi of H.
struct FixedStratum {
  Subgroup subgroup;
  Space mode = Space::affine;
  ScalarMatrix basis;                        // columns span the subspace
  std::vector<CyclotomicScalar> character;   // per element of subgroup.as_group()
  std::string label;                         // "fixed", "triv", "sign", ...

  std::size_t dim() const noexcept { return basis.cols(); }
};

/// Name of a linear character of H: "triv", the label of a one-dimensional
/// irreducible of G restricting to it ("sign", or "sign|H" for a proper H),
/// or its list of values.
std::string linear_character_label(const std::vector<CyclotomicScalar>& values, const Subgroup& h,
                                   const std::vector<Representation>& irreps);

/// Strata of H in the given mode; projective strata with V_chi = 0 are left
/// out, the trivial character comes first.
std::vector<FixedStratum> fixed_strata(const Representation& action, const Subgroup& h, Space mode,
                                       const std::vector<Representation>& irreps = {});

/// Representation of H on the fiber at a point of the stratum: the sum of
/// Res_H V_a, twisted by chi^a in projective mode.
Representation fiber_rep(const BlockModule& e, const FixedStratum& s);
/// Same for a single block.
Representation fiber_rep(const Block& b, const FixedStratum& s);

struct DescentWitness {
  FixedStratum stratum;
  std::optional<int> position;  // for complexes
  std::size_t block = 0;
  std::size_t shift = 0;
  std::string component;
  std::size_t multiplicity = 0;
  Representation fiber;  // fiber of the offending block
};

struct DescentCertificate {
  bool descends = true;
  std::optional<DescentWitness> witness;
  std::size_t subgroups_checked = 0;
  std::size_t strata_checked = 0;
};

/// Every subgroup up to conjugacy except the trivial one, every stratum,
/// every block must have trivial-isotypic fiber. The witness is the first
/// failure in (subgroup, stratum, position, block) order. irreps only name
/// the witness component and may be empty.
DescentCertificate descends(const BlockModule& e, Space mode, const std::vector<Representation>& irreps = {});
DescentCertificate descends(const EquivariantComplex& c, Space mode, const std::vector<Representation>& irreps = {});

/// Checks that phi is equivariant between modules that descend (affine) and
/// returns it once every entry is verified G-invariant. Throws
/// ValidationError on bad input and ConsistencyError if an entry is not
/// invariant.
PolyMatrix descend_morphism(const BlockModule& source, const BlockModule& target, const PolyMatrix& phi);

bool is_invariant(const Polynomial& f, const Representation& action);

struct OracleDegree {
  std::size_t degree = 0;
  std::size_t dim = 0;         // dim E_d
  std::size_t invariants = 0;  // dim E_d^G
  std::size_t span = 0;        // dim of the span of A * invariants in E_d
  bool full() const noexcept { return span == dim; }
};

struct OracleReport {
  Space mode = Space::affine;
  std::size_t bound = 0;
  std::vector<OracleDegree> degrees;
  /// Affine: a deficit at some tested degree. Projective: a deficit at the
  /// top tested degree.
  bool deficit = false;
};

/// 2 * (largest shift) + |G|.
std::size_t default_oracle_bound(const BlockModule& e);

/// Span test of A * E^G against E. Affine: every degree d <= bound, with
/// invariants of all degrees. Projective: degrees that are multiples of
/// |G| only, up to at least one multiple past the largest shift.
OracleReport invariant_oracle(const BlockModule& e, std::optional<std::size_t> bound = std::nullopt,
                              Space mode = Space::affine);

}  // namespace equideriv
