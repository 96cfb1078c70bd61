#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regconst/lattice.hpp"
#include "regconst/rational.hpp"
#include "regconst/relations.hpp"

namespace regconst {

/// Number-field invariants of the fixed field attached to one subgroup class.
struct ClassInvariants {
  std::optional<Integer> h;       // class number
  std::optional<Integer> h_p;     // p-part of the class number
  std::optional<Integer> w;       // number of roots of unity
  std::optional<Integer> lambda;  // order of ker(H^1(H, mu) -> H^1(H, units))
  std::optional<Rational> R;      // regulator surrogate
};

/// Invariants per subgroup class, plus the context flags that license defaults:
/// `totally_real` makes w default to 2, `odd_degree` makes lambda default to 1.
/// Without a flag a missing value is a data error, never silently filled in.
class ArithmeticProfile {
 public:
  ArithmeticProfile(StructurePtr structure, std::vector<ClassInvariants> classes, std::optional<std::uint64_t> p = std::nullopt,
                    bool totally_real = false, bool odd_degree = false);

  const GroupStructure& structure() const { return *structure_; }
  const StructurePtr& structure_ptr() const { return structure_; }
  std::optional<std::uint64_t> prime() const { return p_; }
  bool totally_real() const { return totally_real_; }
  bool odd_degree() const { return odd_degree_; }
  const ClassInvariants& invariants(std::size_t cls) const { return classes_.at(cls); }

  Integer h(std::size_t cls) const;
  Integer h_p(std::size_t cls) const;
  Integer w(std::size_t cls) const;
  Integer lambda(std::size_t cls) const;
  Rational regulator(std::size_t cls) const;

  bool has_regulators(const GRelation& relation) const;

 private:
  StructurePtr structure_;
  std::vector<ClassInvariants> classes_;
  std::optional<std::uint64_t> p_;
  bool totally_real_;
  bool odd_degree_;
};

struct Verdict {
  std::vector<Rational> residuals;         // one per relation
  std::vector<std::string> explanations;   // per relation, factor by factor
  bool overall = true;
};

/// prod (|H| h lambda / w)^{n_H} per relation; all equal to 1 iff the unit lattice
/// is factor equivalent to Z[G]/(sum of g).
Verdict minkowski_factor_check(const ArithmeticProfile& profile, std::span<const GRelation> relations);

/// prod |H|^{-n_H} * prod (R / lambda)^{2 n_H}
RegulatorValue unit_regulator_constant(const ArithmeticProfile& profile, const GRelation& relation);

/// prod (h R / w)^{n_H}; equals 1 for data coming from actual fields.
Rational brauer_kuroda_residual(const ArithmeticProfile& profile, const GRelation& relation);

/// Regulator constant of the unit lattice with R eliminated through the
/// Brauer-Kuroda identity: prod |H|^{-n_H} * prod (w / (h lambda))^{2 n_H}.
/// With `use_p_part`, h is replaced by h_p (valid for p-adic valuations only).
RegulatorValue unit_constant_from_class_numbers(const ArithmeticProfile& profile, const GRelation& relation,
                                                bool use_p_part);

/// Residual C(E)/C(candidate) per relation; C(E) from regulators when present,
/// otherwise from class numbers.
Verdict lattice_factor_check(const ArithmeticProfile& profile, std::span<const GRelation> relations,
                             const GLattice& candidate);

/// Compares v_p of the unit-lattice regulator constant with v_p of the
/// candidate's; residual p^{difference} per relation.
Verdict p_part_factor_check(const ArithmeticProfile& profile, std::span<const GRelation> relations,
                            const GLattice& candidate);

/// prod h_p^{n} * prod |H'|^{n} for the p-group generators.
Verdict bouc_condition_check(const ArithmeticProfile& profile, std::span<const BoucGenerator> generators);
/// Convenience overload generating the relations itself.
Verdict bouc_condition_check(const ArithmeticProfile& profile);

}  // namespace regconst
