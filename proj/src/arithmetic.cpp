#include "regconst/arithmetic.hpp"

#include <sstream>

#include "regconst/error.hpp"

namespace regconst {

namespace {

bool is_power_of(Integer n, const Integer& p) {
  while (n > 1 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
  return n == 1;
}

template <typename T>
void require_positive(const std::optional<T>& value, const std::string& field, const std::string& label) {
  if (value && *value <= 0) fail(ErrorCategory::validation, "class " + label + ": " + field + " must be positive");
}

}  // namespace

ArithmeticProfile::ArithmeticProfile(StructurePtr structure, std::vector<ClassInvariants> classes,
                                     std::optional<std::uint64_t> p, bool totally_real, bool odd_degree)
    : structure_(std::move(structure)), classes_(std::move(classes)), p_(p), totally_real_(totally_real), odd_degree_(odd_degree) {
  if (classes_.size() != structure_->classes().size())
    fail(ErrorCategory::data, "profile must list invariants for each of the " +
                                  std::to_string(structure_->classes().size()) + " subgroup classes");
  if (p_ && !is_prime(*p_)) fail(ErrorCategory::validation, "declared p = " + std::to_string(*p_) + " is not prime");
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const auto& inv = classes_[c];
    const auto& label = structure_->subgroup_class(c).label;
    require_positive(inv.h, "h", label);
    require_positive(inv.h_p, "h_p", label);
    require_positive(inv.w, "w", label);
    require_positive(inv.lambda, "lambda", label);
    require_positive(inv.R, "R", label);
    if (inv.h_p) {
      if (!p_) fail(ErrorCategory::data, "class " + label + ": h_p given but no prime p declared");
      if (!is_power_of(*inv.h_p, Integer(static_cast<unsigned long>(*p_))))
        fail(ErrorCategory::validation, "class " + label + ": h_p = " + inv.h_p->get_str() + " is not a power of " +
                                      std::to_string(*p_));
    }
  }
  const auto& trivial = classes_[structure_->trivial_class()];
  if (trivial.lambda && *trivial.lambda != 1) fail(ErrorCategory::validation, "lambda of the trivial subgroup must be 1");
}

namespace {

[[noreturn]] void missing(const GroupStructure& s, std::size_t cls, const std::string& field) {
  fail(ErrorCategory::data, "class " + s.subgroup_class(cls).label + ": missing " + field);
}

}  // namespace

Integer ArithmeticProfile::h(std::size_t cls) const {
  if (const auto& v = invariants(cls).h) return *v;
  missing(*structure_, cls, "h");
}

Integer ArithmeticProfile::h_p(std::size_t cls) const {
  if (const auto& v = invariants(cls).h_p) return *v;
  missing(*structure_, cls, "h_p");
}

Integer ArithmeticProfile::w(std::size_t cls) const {
  if (const auto& v = invariants(cls).w) return *v;
  if (totally_real_) return 2;
  missing(*structure_, cls, "w");
}

Integer ArithmeticProfile::lambda(std::size_t cls) const {
  if (const auto& v = invariants(cls).lambda) return *v;
  if (odd_degree_ || cls == structure_->trivial_class()) return 1;
  missing(*structure_, cls, "lambda");
}

Rational ArithmeticProfile::regulator(std::size_t cls) const {
  if (const auto& v = invariants(cls).R) return *v;
  missing(*structure_, cls, "R");
}

bool ArithmeticProfile::has_regulators(const GRelation& relation) const {
  for (const auto& [cls, n] : relation.support())
    if (!invariants(cls).R) return false;
  return true;
}

namespace {

void check_group(const ArithmeticProfile& profile, const GRelation& relation) {
  if (profile.structure().group() != relation.structure().group())
    fail(ErrorCategory::validation, "relation and profile belong to different groups");
}

std::string term(const GroupStructure& s, std::size_t cls, const std::string& base, std::int64_t n) {
  return s.subgroup_class(cls).label + ": (" + base + ")^" + std::to_string(n);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

}  // namespace

Verdict minkowski_factor_check(const ArithmeticProfile& profile, std::span<const GRelation> relations) {
  Verdict verdict;
  const auto& s = profile.structure();
  for (const auto& rel : relations) {
    check_group(profile, rel);
    Rational residual = 1;
    std::vector<std::string> parts;
    for (const auto& [cls, n] : rel.support()) {
      const auto order = static_cast<unsigned long>(s.subgroup_class(cls).order);
      Rational base(Integer(order) * profile.h(cls) * profile.lambda(cls), profile.w(cls));
      base.canonicalize();
      residual *= power(base, n);
      parts.push_back(term(s, cls, to_string(base), n));
    }
    verdict.residuals.push_back(residual);
    verdict.explanations.push_back(join(parts));
    verdict.overall = verdict.overall && residual == 1;
  }
  return verdict;
}

RegulatorValue unit_regulator_constant(const ArithmeticProfile& profile, const GRelation& relation) {
  check_group(profile, relation);
  Rational value = trivial_lattice_constant(relation);
  for (const auto& [cls, n] : relation.support())
    value *= power(profile.regulator(cls) / Rational(profile.lambda(cls)), 2 * n);
  return RegulatorValue::from(value);
}

Rational brauer_kuroda_residual(const ArithmeticProfile& profile, const GRelation& relation) {
  check_group(profile, relation);
  Rational value = 1;
  for (const auto& [cls, n] : relation.support())
    value *= power(Rational(profile.h(cls)) * profile.regulator(cls) / Rational(profile.w(cls)), n);
  return value;
}

RegulatorValue unit_constant_from_class_numbers(const ArithmeticProfile& profile, const GRelation& relation,
                                                bool use_p_part) {
  check_group(profile, relation);
  Rational value = trivial_lattice_constant(relation);
  for (const auto& [cls, n] : relation.support()) {
    const Integer h = use_p_part ? profile.h_p(cls) : profile.h(cls);
    value *= power(Rational(profile.w(cls)) / Rational(h * profile.lambda(cls)), 2 * n);
  }
  return RegulatorValue::from(value);
}

namespace {

RegulatorValue unit_constant(const ArithmeticProfile& profile, const GRelation& relation, bool prefer_p_part) {
  if (profile.has_regulators(relation)) return unit_regulator_constant(profile, relation);
  if (prefer_p_part) {
    bool all_hp = true;
    for (const auto& [cls, n] : relation.support()) all_hp = all_hp && profile.invariants(cls).h_p.has_value();
    if (all_hp) return unit_constant_from_class_numbers(profile, relation, true);
  }
  return unit_constant_from_class_numbers(profile, relation, false);
}

}  // namespace

Verdict lattice_factor_check(const ArithmeticProfile& profile, std::span<const GRelation> relations,
                             const GLattice& candidate) {
  Verdict verdict;
  for (const auto& rel : relations) {
    const RegulatorValue units = unit_constant(profile, rel, false);
    const RegulatorValue target = regulator_constant(candidate, rel);
    const Rational residual = units.value / target.value;
    verdict.residuals.push_back(residual);
    verdict.explanations.push_back("C(E) = " + to_string(units.value) + "; C(" + candidate.label() +
                                   ") = " + to_string(target.value));
    verdict.overall = verdict.overall && residual == 1;
  }
  return verdict;
}

Verdict p_part_factor_check(const ArithmeticProfile& profile, std::span<const GRelation> relations,
                            const GLattice& candidate) {
  if (!profile.prime()) fail(ErrorCategory::data, "p-part check needs a declared prime p");
  const Integer p(static_cast<unsigned long>(*profile.prime()));
  Verdict verdict;
  for (const auto& rel : relations) {
    const RegulatorValue units = unit_constant(profile, rel, true);
    const RegulatorValue target = regulator_constant(candidate, rel);
    const std::int64_t vu = units.valuation_at(p);
    const std::int64_t vt = target.valuation_at(p);
    verdict.residuals.push_back(power(Rational(p), vu - vt));
    std::ostringstream os;
    os << "v_" << p.get_str() << "(C(E)) = " << vu << "; v_" << p.get_str() << "(C(" << candidate.label() << ")) = " << vt;
    verdict.explanations.push_back(os.str());
    verdict.overall = verdict.overall && vu == vt;
  }
  return verdict;
}

Verdict bouc_condition_check(const ArithmeticProfile& profile, std::span<const BoucGenerator> generators) {
  if (!profile.prime()) fail(ErrorCategory::data, "Bouc condition check needs a declared prime p");
  const auto p = *profile.prime();
  if (!profile.structure().group().is_p_group(p))
    fail(ErrorCategory::validation, "group is not a " + std::to_string(p) + "-group");
  const auto& s = profile.structure();
  Verdict verdict;
  for (const auto& gen : generators) {
    check_group(profile, gen.relation);
    Rational residual = 1;
    std::vector<std::string> parts;
    for (const auto& [cls, n] : gen.relation.support()) {
      const Integer base = profile.h_p(cls) * static_cast<unsigned long>(s.subgroup_class(cls).order);
      residual *= power(Rational(base), n);
      parts.push_back(term(s, cls, base.get_str(), n));
    }
    verdict.residuals.push_back(residual);
    verdict.explanations.push_back(join(parts));
    verdict.overall = verdict.overall && residual == 1;
  }
  return verdict;
}

Verdict bouc_condition_check(const ArithmeticProfile& profile) {
  if (!profile.prime()) fail(ErrorCategory::data, "Bouc condition check needs a declared prime p");
  if (!profile.structure().group().is_p_group(*profile.prime()))
    fail(ErrorCategory::validation, "group is not a " + std::to_string(*profile.prime()) + "-group");
  const auto gens = bouc_generators(profile.structure_ptr(), *profile.prime());
  return bouc_condition_check(profile, gens);
}

}  // namespace regconst
