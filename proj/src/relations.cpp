#include "regconst/relations.hpp"

#include <algorithm>

#include "regconst/error.hpp"

namespace regconst {

GRelation::GRelation(StructurePtr structure, std::vector<std::int64_t> coeffs)
    : structure_(std::move(structure)), coeffs_(std::move(coeffs)) {
  if (!structure_) fail(ErrorCategory::internal, "relation without a group");
  if (coeffs_.size() != structure_->classes().size())
    fail(ErrorCategory::validation, "relation has " + std::to_string(coeffs_.size()) + " coefficients for " +
                                        std::to_string(structure_->classes().size()) + " subgroup classes");
}

GRelation GRelation::zero(StructurePtr structure) {
  const std::size_t n = structure->classes().size();
  return GRelation(std::move(structure), std::vector<std::int64_t>(n, 0));
}

bool GRelation::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t GRelation::coefficient_sum() const {
  std::int64_t s = 0;
  for (auto c : coeffs_) s += c;
  return s;
}

std::map<std::size_t, std::int64_t> GRelation::support() const {
  std::map<std::size_t, std::int64_t> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) out.emplace(i, coeffs_[i]);
  return out;
}

GRelation operator+(const GRelation& a, const GRelation& b) {
  if (a.structure_ != b.structure_) fail(ErrorCategory::validation, "relations of different groups");
  GRelation out = a;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
  return out;
}

GRelation operator*(std::int64_t k, const GRelation& a) {
  GRelation out = a;
  for (auto& c : out.coeffs_) c *= k;
  return out;
}

CharacterVector permutation_character(const GroupStructure& structure, std::size_t subgroup_class) {
  const Group& g = structure.group();
  const auto& h = structure.subgroup_class(subgroup_class).representative;
  CharacterVector out;
  // #{xH : x^-1 c x in H} = |H ∩ cl(c)| * |C_G(c)| / |H| = |H ∩ cl(c)| * |G| / (|cl(c)| * |H|)
  for (const auto& cls : structure.element_classes()) {
    std::int64_t hits = 0;
    for (Element x : cls.members)
      if (std::binary_search(h.begin(), h.end(), x)) ++hits;
    const auto num = static_cast<std::int64_t>(hits * g.order());
    const auto den = static_cast<std::int64_t>(cls.members.size() * h.size());
    if (num % den != 0) fail(ErrorCategory::internal, "non-integral permutation character value");
    out.values.push_back(num / den);
  }
  return out;
}

IntMatrix permutation_character_table(const GroupStructure& structure) {
  const std::size_t rows = structure.element_classes().size();
  const std::size_t cols = structure.classes().size();
  IntMatrix table(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    const auto chi = permutation_character(structure, c);
    for (std::size_t r = 0; r < rows; ++r) table(r, c) = chi.values[r];
  }
  return table;
}

std::vector<GRelation> relation_basis(const StructurePtr& structure) {
  const IntMatrix kernel = integer_kernel(permutation_character_table(*structure));
  std::vector<GRelation> out;
  for (std::size_t i = 0; i < kernel.rows(); ++i) {
    std::vector<std::int64_t> coeffs(kernel.cols());
    for (std::size_t j = 0; j < kernel.cols(); ++j) {
      if (!kernel(i, j).fits_slong_p()) fail(ErrorCategory::resource, "relation coefficient overflows 64 bits");
      coeffs[j] = kernel(i, j).get_si();
    }
    out.emplace_back(structure, std::move(coeffs));
  }
  return out;
}

bool is_relation(const GRelation& candidate) {
  const auto& s = candidate.structure();
  std::vector<std::int64_t> total(s.element_classes().size(), 0);
  for (const auto& [cls, n] : candidate.support()) {
    const auto chi = permutation_character(s, cls);
    for (std::size_t r = 0; r < total.size(); ++r) total[r] += n * chi.values[r];
  }
  return std::all_of(total.begin(), total.end(), [](std::int64_t v) { return v == 0; });
}

bool is_relation(const StructurePtr& structure, const std::map<std::size_t, std::int64_t>& candidate) {
  GRelation rel = GRelation::zero(structure);
  for (const auto& [cls, n] : candidate) {
    if (cls >= structure->classes().size())
      fail(ErrorCategory::validation, "unknown subgroup class index " + std::to_string(cls));
    rel.add(cls, n);
  }
  return is_relation(rel);
}

GRelation induce_inflate(const StructurePtr& structure, const Subquotient& sq, const GRelation& quotient_relation) {
  if (quotient_relation.structure().group() != *sq.quotient.group)
    fail(ErrorCategory::validation, "relation does not belong to the subquotient");
  if (!is_relation(quotient_relation)) fail(ErrorCategory::validation, "argument is not a relation of the subquotient");
  GRelation out = GRelation::zero(structure);
  for (const auto& [cls, n] : quotient_relation.support()) out.add(sq.class_map.at(cls), n);
  if (!is_relation(out)) fail(ErrorCategory::internal, "induced/inflated relation failed the character test");
  return out;
}

namespace {

std::vector<GRelation> quotient_relations(const StructurePtr& q, const QuotientType& type) {
  const Group& g = q->group();
  std::vector<GRelation> out;
  if (type.kind == QuotientKind::elementary_abelian_p2) {
    // 1 - sum_C C + p * (H/B)
    GRelation rel = GRelation::zero(q);
    rel.add(q->trivial_class(), 1);
    for (std::size_t c = 0; c < q->classes().size(); ++c)
      if (q->subgroup_class(c).order == type.parameter) rel.add(c, -1);
    rel.add(q->whole_group_class(), static_cast<std::int64_t>(type.parameter));
    out.push_back(std::move(rel));
    return out;
  }
  // I - IZ - J + JZ over pairs of non-conjugate non-central subgroups of order p.
  const std::uint64_t p = type.kind == QuotientKind::heisenberg ? type.parameter : 2;
  const ElementSet z = g.center();
  std::vector<std::size_t> candidates;
  for (std::size_t c = 0; c < q->classes().size(); ++c) {
    const auto& rep = q->subgroup_class(c).representative;
    if (rep.size() != p) continue;
    if (!std::includes(z.begin(), z.end(), rep.begin(), rep.end())) candidates.push_back(c);
  }
  const auto with_center = [&](std::size_t c) {
    std::vector<Element> gens(z.begin(), z.end());
    const auto& rep = q->subgroup_class(c).representative;
    gens.insert(gens.end(), rep.begin(), rep.end());
    return q->class_of(g.closure(gens));
  };
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      GRelation rel = GRelation::zero(q);
      rel.add(candidates[a], 1);
      rel.add(with_center(candidates[a]), -1);
      rel.add(candidates[b], -1);
      rel.add(with_center(candidates[b]), 1);
      out.push_back(std::move(rel));
    }
  }
  return out;
}

}  // namespace

std::vector<BoucGenerator> bouc_generators(const StructurePtr& structure, std::uint64_t p) {
  const Group& g = structure->group();
  if (!g.is_p_group(p)) fail(ErrorCategory::validation, g.description() + " is not a " + std::to_string(p) + "-group");
  std::vector<QuotientType> types{{QuotientKind::elementary_abelian_p2, p}};
  if (p % 2 == 1) types.push_back({QuotientKind::heisenberg, p});
  if (p == 2)
    for (std::uint64_t n = kMinDihedralExponent; (std::uint64_t{1} << n) <= g.order(); ++n) types.push_back({QuotientKind::dihedral_2n, n});

  std::vector<BoucGenerator> out;
  for (const auto& type : types) {
    for (auto& sq : subquotients_of_type(*structure, type)) {
      for (auto& rel : quotient_relations(sq.quotient_structure, type)) {
        if (!is_relation(rel)) fail(ErrorCategory::internal, "generator relation failed the character test");
        GRelation lifted = induce_inflate(structure, sq, rel);
        out.push_back({std::move(lifted), sq, std::move(rel)});
      }
    }
  }
  return out;
}

IntMatrix relation_lattice(std::span<const GRelation> relations, std::size_t class_count) {
  IntMatrix rows(relations.size(), class_count);
  for (std::size_t i = 0; i < relations.size(); ++i)
    for (std::size_t j = 0; j < class_count; ++j) rows(i, j) = static_cast<long>(relations[i].coeff(j));
  return hermite_normal_form(std::move(rows));
}

bool same_lattice(std::span<const GRelation> a, std::span<const GRelation> b) {
  if (a.empty() || b.empty()) {
    const auto all_zero = [](std::span<const GRelation> r) {
      return std::all_of(r.begin(), r.end(), [](const GRelation& x) { return x.is_zero(); });
    };
    return all_zero(a) && all_zero(b);
  }
  const std::size_t n = a.front().coeffs().size();
  return relation_lattice(a, n) == relation_lattice(b, n);
}

}  // namespace regconst
