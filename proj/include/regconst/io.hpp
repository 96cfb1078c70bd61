#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "regconst/arithmetic.hpp"
#include "regconst/factorisability.hpp"
#include "regconst/group.hpp"
#include "regconst/lattice.hpp"
#include "regconst/relations.hpp"

namespace regconst {

using Json = nlohmann::ordered_json;

/// Group mini-language:
///   cyclic:n  elemab:p,k  dihedral:m  heisenberg:p  q8  symmetric:n
///   semidirect:n,m,r  perm:[(0,1,2),(0,1)(2,3)]
/// joined by `*` for direct products. Errors report the character position.
GroupPtr parse_group_spec(std::string_view text, std::size_t element_budget = kDefaultElementBudget);

/// Element budget from REGCONST_ELEMENT_BUDGET, or the default.
std::size_t element_budget_from_env();

/// Lattice expressions: A, I, Z, Reg, Coset(label), Tower(m), Sum(x, y, ...),
/// x + y for direct sums and x^m for direct powers.
GLattice parse_lattice_expr(std::string_view text, const StructurePtr& structure);

/// "label:n,label:n,..." resolved against the class labels.
GRelation parse_relation(std::string_view text, const StructurePtr& structure);

/// Positive rationals keyed by label: "label:q,label:q,...".
std::map<std::size_t, Rational> parse_label_values(std::string_view text, const StructurePtr& structure);

/// Comma-separated rationals.
std::vector<Rational> parse_rational_list(std::string_view text);

std::size_t resolve_label(const GroupStructure& structure, std::string_view label);

ArithmeticProfile parse_profile(const Json& document, std::size_t element_budget = kDefaultElementBudget);
ArithmeticProfile load_profile(const std::string& path, std::size_t element_budget = kDefaultElementBudget);

std::string format_relation(const GRelation& relation);
Json relation_to_json(const GRelation& relation);
GRelation relation_from_json(const Json& terms, const StructurePtr& structure);
Json regulator_to_json(const RegulatorValue& value);
Json verdict_to_json(const Verdict& verdict);
Json subgroup_classes_to_json(const GroupStructure& structure);

}  // namespace regconst
