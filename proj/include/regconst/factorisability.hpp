#pragma once

#include <span>
#include <vector>

#include "regconst/group.hpp"
#include "regconst/rational.hpp"

namespace regconst {

/// Elements of an abelian group generating the same cyclic subgroup.
struct Division {
  ElementSet members;
  std::size_t generated_class = 0;  // the cyclic subgroup they generate
};

/// Positive-rational valued function on the subgroups of an abelian group.
/// For abelian groups subgroup classes are single subgroups, so values are
/// indexed by class.
class SubgroupFunction {
 public:
  SubgroupFunction(StructurePtr structure, std::vector<Rational> values);

  static SubgroupFunction constant(StructurePtr structure, const Rational& value);
  static SubgroupFunction order_function(StructurePtr structure);

  const GroupStructure& structure() const { return *structure_; }
  const StructurePtr& structure_ptr() const { return structure_; }
  const Rational& operator[](std::size_t cls) const { return values_.at(cls); }
  std::span<const Rational> values() const { return values_; }

  friend SubgroupFunction operator*(const SubgroupFunction& a, const SubgroupFunction& b);

 private:
  StructurePtr structure_;
  std::vector<Rational> values_;
};

/// Throws a validation error for a non-abelian group.
std::vector<Division> divisions(const GroupStructure& structure);

/// f'(D) = prod over C <= <D> of f(C)^mu((<D>:C)), C = <D> included.
Rational division_transform(const SubgroupFunction& f, const Division& division);

/// f~(H) = (prod over divisions D inside H of f'(D)) / f(H).
SubgroupFunction factorisable_quotient(const SubgroupFunction& f);

/// Complex characters of an abelian group, as homomorphisms into Z/e with e the exponent.
struct AbelianCharacter {
  std::vector<std::uint64_t> values;  // chi(g) = exp(2 pi i values[g] / exponent)
  ElementSet kernel;
};

/// All |G| characters; index 0 is the trivial character, the rest ordered by
/// their values on the group generators.
std::vector<AbelianCharacter> abelian_characters(const Group& group);

/// f(H) = product of g(chi) over characters trivial on H.
SubgroupFunction function_from_character_data(const StructurePtr& structure, std::span<const Rational> character_values);

/// The quotient read through H -> H^perp, i.e. computed on the dual group:
/// value at H is (prod over K >= H with G/K cyclic of f*(K)) / f(H), where
/// f*(K) = prod over L >= K of f(L)^mu((L:K)).
SubgroupFunction dual_factorisable_quotient(const SubgroupFunction& f);

/// True iff f(H) = prod of g(chi) over characters trivial on H for some g,
/// equivalently the dual quotient is identically 1.
bool is_factorisable_abelian(const SubgroupFunction& f);

}  // namespace regconst
