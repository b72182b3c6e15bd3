#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace equideriv {

/// One-line image of a permutation of {0, ..., n-1}.
using Permutation = std::vector<std::size_t>;

inline constexpr std::size_t kMaxGroupOrder = 64;

/// A finite group given by its full multiplication table.
///
/// Index 0 is always the identity. Groups generated from permutations number
/// their elements in breadth-first order of right multiplication by the
/// generators, so indices are stable for a given generator list.
class FiniteGroup {
 public:
  /// Closure of the generators under composition, (p*q)(i) = p(q(i)).
  static FiniteGroup from_permutations(const std::vector<Permutation>& generators,
                                       std::string name = {});
  /// Validates a full Cayley table (table[a][b] = a*b, 0-based).
  static FiniteGroup from_table(const std::vector<std::vector<std::size_t>>& table,
                                std::string name = {});

  std::size_t order() const noexcept { return mul_.size(); }
  const std::string& name() const noexcept { return name_; }
  std::size_t identity() const noexcept { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  std::size_t conjugate(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv_[g]); }
  std::size_t element_order(std::size_t a) const;
  std::size_t exponent() const;
  bool is_abelian() const;

  /// A generating set; the supplied generators for permutation groups.
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }
  /// Element as a permutation, for groups built from permutations.
  const std::optional<std::vector<Permutation>>& permutations() const noexcept { return perms_; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return mul_; }

  /// Conjugacy classes ordered by smallest member; members ascending.
  const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }
  std::size_t class_of(std::size_t a) const { return class_of_[a]; }

  /// Exhaustive associativity, identity and inverse check.
  bool verify_axioms() const;

 private:
  FiniteGroup() = default;
  void finish();

  std::string name_;
  std::vector<std::vector<std::size_t>> mul_;
  std::vector<std::size_t> inv_;
  std::vector<std::size_t> generators_;
  std::optional<std::vector<Permutation>> perms_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Bit set of element indices; valid because orders are bounded by 64.
using ElementMask = std::uint64_t;

/// A subgroup of a parent group, also available as a group in its own right
/// with elements renumbered by ascending parent index.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<std::size_t> members);

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  ElementMask mask() const noexcept { return mask_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool contains(std::size_t g) const { return (mask_ >> g) & 1U; }
  bool is_trivial() const noexcept { return members_.size() == 1; }
  /// The subgroup as a standalone group; element i is parent element members()[i].
  const GroupPtr& as_group() const noexcept { return group_; }

 private:
  GroupPtr parent_;
  std::vector<std::size_t> members_;
  ElementMask mask_ = 0;
  GroupPtr group_;
};

/// Elements generated by a set of elements.
std::vector<std::size_t> closure(const FiniteGroup& g, const std::vector<std::size_t>& seeds);

/// Conjugacy classes of g; same as g.classes().
std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g);

/// One representative per conjugacy class of subgroups, ordered by subgroup
/// order and then by member list. Includes the trivial group and g itself.
std::vector<Subgroup> subgroups_up_to_conjugacy(const GroupPtr& g);

/// All subgroups (not up to conjugacy), same ordering.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

bool are_conjugate(const FiniteGroup& g, ElementMask a, ElementMask b);

/// Commutator subgroup [H, H] as parent element indices.
std::vector<std::size_t> derived_subgroup(const FiniteGroup& g);

// Built-in groups: "trivial", "C1".."C12", "S2", "S3", "D4", "Klein" ("V4").
GroupPtr trivial_group();
GroupPtr cyclic_group(std::size_t n);
GroupPtr symmetric_group(std::size_t n);  // n = 2 or 3
GroupPtr dihedral_group_d4();
GroupPtr klein_four_group();
/// Throws ValidationError for unknown names.
GroupPtr builtin_group(const std::string& name);
std::vector<std::string> builtin_group_names();

}  // namespace equideriv
