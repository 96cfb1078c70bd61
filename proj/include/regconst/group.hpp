#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace regconst {

using Element = std::uint32_t;
/// Sorted, duplicate-free set of element indices.
using ElementSet = std::vector<Element>;
/// Permutation of {0, ..., n-1} in image form: perm[i] is the image of i.
using Permutation = std::vector<std::uint32_t>;

/// Largest order for which a multiplication table is built.
inline constexpr std::size_t kMaxGroupOrder = 256;
/// Default cap on closure enumeration in group_from_generators.
inline constexpr std::size_t kDefaultElementBudget = 1'000'000;

/// Finite group given by its multiplication table. Element 0 is the identity.
/// Immutable after construction.
class Group {
 public:
  /// Validating constructor: checks the Latin-square property, identity,
  /// associativity and that `generators` generate the whole table.
  Group(std::size_t order, std::vector<Element> table, std::vector<Element> generators, std::string description = {});

  std::size_t order() const noexcept { return order_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inverse(Element a) const { return inverses_[a]; }
  /// x^{-1} g x
  Element conjugate(Element g, Element x) const { return mul(mul(inverses_[x], g), x); }
  Element power(Element g, std::uint64_t k) const;

  std::span<const Element> generators() const noexcept { return generators_; }
  std::size_t element_order(Element g) const { return element_orders_[g]; }
  std::span<const std::size_t> element_orders() const noexcept { return element_orders_; }
  std::span<const Element> table() const noexcept { return table_; }
  const std::string& description() const noexcept { return description_; }

  bool is_abelian() const;
  /// Every element order is a power of p.
  bool is_p_group(std::uint64_t p) const;
  std::size_t exponent() const;
  /// Subgroup generated by the given elements (sorted).
  ElementSet closure(std::span<const Element> gens) const;
  ElementSet center() const;
  bool is_subgroup(std::span<const Element> set) const;
  bool is_normal_in(std::span<const Element> normal, std::span<const Element> ambient) const;

  friend bool operator==(const Group& a, const Group& b) { return a.order_ == b.order_ && a.table_ == b.table_; }

 private:
  struct Trusted {};

 public:
  /// Skips associativity and generation checks; for internal constructions
  /// whose tables are correct by construction.
  Group(Trusted, std::size_t order, std::vector<Element> table, std::vector<Element> generators, std::string description);
  static Group trusted(std::size_t order, std::vector<Element> table, std::vector<Element> generators, std::string description);

 private:
  void finish();

  std::size_t order_;
  std::vector<Element> table_;
  std::vector<Element> generators_;
  std::vector<Element> inverses_;
  std::vector<std::size_t> element_orders_;
  std::string description_;
};

using GroupPtr = std::shared_ptr<const Group>;

// ---- constructors -------------------------------------------------------

/// Closure of permutations under composition ((a*b)(i) = a(b(i))). Elements
/// are indexed breadth-first from the identity, multiplying on the right by
/// the generators in the order given.
GroupPtr group_from_generators(std::span<const Permutation> perms, std::size_t element_budget = kDefaultElementBudget);

GroupPtr cyclic_group(std::size_t n);
/// (Z/p)^k, generated by the unit vectors.
GroupPtr elementary_abelian_group(std::uint64_t p, std::size_t k);
/// Dihedral group of order m (m even), generated by a rotation r and a reflection s.
GroupPtr dihedral_group(std::size_t order);
GroupPtr quaternion8_group();
GroupPtr symmetric_group(std::size_t n);
/// Upper unitriangular 3x3 matrices over F_p, generated by the two elementary
/// matrices E_12 and E_23.
GroupPtr heisenberg_group(std::uint64_t p);
GroupPtr direct_product(const Group& a, const Group& b);
/// A x| B where `action[i]` is the automorphism of A (as a permutation of A's
/// indices) by which B.generators()[i] acts. Checked to extend to a homomorphism.
GroupPtr semidirect_product(const Group& a, const Group& b, std::span<const Permutation> action);
/// C_n x| C_m with the generator of C_m acting by x -> x^r.
GroupPtr metacyclic_group(std::size_t n, std::size_t m, std::size_t r);

// ---- subgroup structure -------------------------------------------------

struct SubgroupClass {
  ElementSet representative;  // lexicographically least conjugate
  std::size_t order = 0;
  std::size_t class_size = 0;
  bool is_cyclic = false;
  std::vector<ElementSet> member_subgroups;  // sorted
  std::vector<Element> generators;           // generates `representative`
  std::string label;                         // o<order>#<1-based index within order>

  bool is_normal() const { return class_size == 1; }
};

struct ElementClass {
  std::vector<Element> members;  // sorted; members.front() is the representative
  Element representative() const { return members.front(); }
};

/// A group together with its conjugacy classes of elements and of subgroups.
/// Immutable after construction.
class GroupStructure {
 public:
  explicit GroupStructure(GroupPtr group);

  const Group& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }

  std::span<const SubgroupClass> classes() const noexcept { return classes_; }
  const SubgroupClass& subgroup_class(std::size_t index) const { return classes_.at(index); }
  /// Class of an exact subgroup; throws a validation error if `subgroup` is not a subgroup.
  std::size_t class_of(const ElementSet& subgroup) const;
  std::optional<std::size_t> find_label(std::string_view label) const;
  std::size_t trivial_class() const noexcept { return 0; }
  std::size_t whole_group_class() const noexcept { return classes_.size() - 1; }
  std::size_t subgroup_count() const noexcept { return class_lookup_.size(); }

  std::span<const ElementClass> element_classes() const noexcept { return element_classes_; }
  std::size_t element_class_of(Element g) const { return element_class_index_[g]; }

 private:
  GroupPtr group_;
  std::vector<SubgroupClass> classes_;
  std::map<ElementSet, std::size_t> class_lookup_;
  std::vector<ElementClass> element_classes_;
  std::vector<std::size_t> element_class_index_;
};

using StructurePtr = std::shared_ptr<const GroupStructure>;

StructurePtr analyse(GroupPtr group);

/// Conjugacy classes of subgroups, sorted by (order, representative).
std::vector<SubgroupClass> subgroup_classes(const Group& group);

/// Exhaustive subset search; test oracle only, |G| <= 16.
std::vector<ElementSet> all_subgroups_by_subsets(const Group& group);

// ---- quotients ----------------------------------------------------------

struct Quotient {
  GroupPtr group;
  /// projection[g] is the coset of g; kNotInDomain for g outside the numerator.
  std::vector<Element> projection;
  /// lift[q] is the least element of G in coset q.
  std::vector<Element> lift;

  static constexpr Element kNotInDomain = static_cast<Element>(-1);
};

/// G/N with cosets indexed by their least element. Throws if N is not normal.
Quotient quotient_group(const Group& group, const ElementSet& normal);
/// H/B for B normal in H <= G. Generators are the images of `h_generators`.
Quotient subquotient_group(const Group& group, const ElementSet& h, const ElementSet& b,
                           std::span<const Element> h_generators);

enum class QuotientKind { elementary_abelian_p2, heisenberg, dihedral_2n };

/// Smallest n for which D_{2^n} sections are used (order 8).
inline constexpr std::uint64_t kMinDihedralExponent = 3;

struct QuotientType {
  QuotientKind kind;
  std::uint64_t parameter;  // p for the first two kinds, n (order 2^n) for dihedral

  friend bool operator==(const QuotientType&, const QuotientType&) = default;
};

std::string to_string(const QuotientType& type);

/// Structural recognition of the three quotient types used by the p-group
/// relation generators.
bool has_quotient_type(const Group& group, const QuotientType& type);

struct Subquotient {
  std::size_t h_class = 0;  // class of H in the ambient group
  ElementSet h;             // exact H (the class representative)
  ElementSet b;             // exact B, normal in H
  std::optional<QuotientType> type;
  Quotient quotient;        // H/B
  StructurePtr quotient_structure;
  /// quotient class index -> ambient class of its preimage in H
  std::vector<std::size_t> class_map;
};

/// Builds H/B with the map from subgroups of H/B to classes of G.
Subquotient make_subquotient(const GroupStructure& structure, std::size_t h_class, const ElementSet& b);
/// Subquotient for an arbitrary subgroup H (not necessarily the class representative).
Subquotient make_subquotient(const GroupStructure& structure, const ElementSet& h, const ElementSet& b);

/// All (H, B) with H up to conjugacy and B exact whose quotient has the given type.
std::vector<Subquotient> subquotients_of_type(const GroupStructure& structure, const QuotientType& type);

}  // namespace regconst
