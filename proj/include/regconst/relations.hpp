#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "regconst/group.hpp"
#include "regconst/matrix.hpp"

namespace regconst {

/// Formal sum of subgroup classes with integer coefficients. Coefficients are
/// dense over the classes of `structure`; a GRelation need not satisfy the
/// relation condition until checked with is_relation.
class GRelation {
 public:
  GRelation() = default;
  GRelation(StructurePtr structure, std::vector<std::int64_t> coeffs);

  static GRelation zero(StructurePtr structure);

  const GroupStructure& structure() const { return *structure_; }
  const StructurePtr& structure_ptr() const { return structure_; }
  std::span<const std::int64_t> coeffs() const { return coeffs_; }
  std::int64_t coeff(std::size_t cls) const { return coeffs_.at(cls); }
  void add(std::size_t cls, std::int64_t n) { coeffs_.at(cls) += n; }

  bool is_zero() const;
  std::int64_t coefficient_sum() const;

  /// Sparse view: class index -> nonzero coefficient.
  std::map<std::size_t, std::int64_t> support() const;

  friend GRelation operator+(const GRelation& a, const GRelation& b);
  friend GRelation operator*(std::int64_t k, const GRelation& a);
  friend bool operator==(const GRelation& a, const GRelation& b) { return a.coeffs_ == b.coeffs_; }

 private:
  StructurePtr structure_;
  std::vector<std::int64_t> coeffs_;
};

/// Values of a permutation character on the conjugacy classes of elements.
struct CharacterVector {
  std::vector<std::int64_t> values;
};

/// values[c] = number of cosets xH fixed by a representative of element class c.
CharacterVector permutation_character(const GroupStructure& structure, std::size_t subgroup_class);

/// Matrix whose columns are the permutation characters of all subgroup classes.
IntMatrix permutation_character_table(const GroupStructure& structure);

/// Saturated basis of the lattice of relations in Hermite normal form (so the
/// first nonzero coefficient of each vector is positive).
std::vector<GRelation> relation_basis(const StructurePtr& structure);

bool is_relation(const GRelation& candidate);
/// Throws a validation error for an unknown class index.
bool is_relation(const StructurePtr& structure, const std::map<std::size_t, std::int64_t>& candidate);

/// Ind_H^G Inf_{H/B}^H of a relation of H/B: the sum over B <= H' <= H of the
/// quotient coefficients, collected on the classes of G.
GRelation induce_inflate(const StructurePtr& structure, const Subquotient& sq, const GRelation& quotient_relation);

struct BoucGenerator {
  GRelation relation;
  Subquotient source;
  GRelation quotient_relation;
};

/// Spanning relations of a p-group from its elementary abelian, Heisenberg and
/// dihedral subquotients. Throws a validation error if G is not a p-group.
std::vector<BoucGenerator> bouc_generators(const StructurePtr& structure, std::uint64_t p);

/// Hermite normal form of the lattice spanned by the relations.
IntMatrix relation_lattice(std::span<const GRelation> relations, std::size_t class_count);

bool same_lattice(std::span<const GRelation> a, std::span<const GRelation> b);

}  // namespace regconst
