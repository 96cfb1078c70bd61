#include "regconst/factorisability.hpp"

#include <algorithm>

#include "regconst/error.hpp"

namespace regconst {

namespace {

void require_abelian(const GroupStructure& structure) {
  if (!structure.group().is_abelian())
    fail(ErrorCategory::validation, structure.group().description() + " is not abelian");
}

}  // namespace

SubgroupFunction::SubgroupFunction(StructurePtr structure, std::vector<Rational> values)
    : structure_(std::move(structure)), values_(std::move(values)) {
  require_abelian(*structure_);
  if (values_.size() != structure_->classes().size())
    fail(ErrorCategory::validation, "subgroup function must be defined on every subgroup");
  for (const auto& v : values_)
    if (v <= 0) fail(ErrorCategory::validation, "subgroup function values must be positive rationals");
}

SubgroupFunction SubgroupFunction::constant(StructurePtr structure, const Rational& value) {
  const std::size_t n = structure->classes().size();
  return SubgroupFunction(std::move(structure), std::vector<Rational>(n, value));
}

SubgroupFunction SubgroupFunction::order_function(StructurePtr structure) {
  std::vector<Rational> values;
  for (const auto& cls : structure->classes()) values.emplace_back(static_cast<long>(cls.order));
  return SubgroupFunction(std::move(structure), std::move(values));
}

SubgroupFunction operator*(const SubgroupFunction& a, const SubgroupFunction& b) {
  if (a.structure_ != b.structure_) fail(ErrorCategory::validation, "subgroup functions on different groups");
  std::vector<Rational> values(a.values_.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = a.values_[i] * b.values_[i];
  return SubgroupFunction(a.structure_, std::move(values));
}

std::vector<Division> divisions(const GroupStructure& structure) {
  require_abelian(structure);
  const Group& g = structure.group();
  std::vector<Division> out;
  std::vector<bool> seen(g.order(), false);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    const ElementSet cyc = g.closure(std::vector<Element>{static_cast<Element>(x)});
    Division d;
    for (Element y : cyc) {
      if (g.element_order(y) == cyc.size()) {
        d.members.push_back(y);
        seen[y] = true;
      }
    }
    d.generated_class = structure.class_of(cyc);
    out.push_back(std::move(d));
  }
  return out;
}

Rational division_transform(const SubgroupFunction& f, const Division& division) {
  const auto& s = f.structure();
  const Group& g = s.group();
  const Element x = division.members.front();
  const std::uint64_t n = g.element_order(x);
  Rational result = 1;
  for (std::uint64_t e = 1; e <= n; ++e) {
    if (n % e != 0) continue;
    const int mu = moebius(n / e);
    if (mu == 0) continue;
    const Element y = g.power(x, n / e);  // generates the subgroup of order e
    const std::size_t cls = s.class_of(g.closure(std::vector<Element>{y}));
    result *= power(f[cls], mu);
  }
  return result;
}

SubgroupFunction factorisable_quotient(const SubgroupFunction& f) {
  const auto& s = f.structure();
  const auto divs = divisions(s);
  std::vector<Rational> transformed;
  for (const auto& d : divs) transformed.push_back(division_transform(f, d));
  std::vector<Rational> values;
  for (std::size_t c = 0; c < s.classes().size(); ++c) {
    const auto& h = s.subgroup_class(c).representative;
    Rational product = 1;
    for (std::size_t i = 0; i < divs.size(); ++i)
      if (std::binary_search(h.begin(), h.end(), divs[i].members.front())) product *= transformed[i];
    values.push_back(product / f[c]);
  }
  return SubgroupFunction(f.structure_ptr(), std::move(values));
}

std::vector<AbelianCharacter> abelian_characters(const Group& group) {
  if (!group.is_abelian()) fail(ErrorCategory::validation, group.description() + " is not abelian");
  const std::uint64_t e = group.exponent();
  const auto gens = group.generators();
  const std::size_t n = group.order();
  std::vector<AbelianCharacter> out;
  // Enumerate generator images in Z/e (odometer order) and keep the consistent ones.
  std::vector<std::uint64_t> images(gens.size(), 0);
  for (;;) {
    std::vector<std::uint64_t> values(n, 0);
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::vector<Element> queue{0};
    bool consistent = true;
    for (std::size_t i = 0; i < queue.size() && consistent; ++i) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const Element y = group.mul(queue[i], gens[k]);
        const std::uint64_t v = (values[queue[i]] + images[k]) % e;
        if (!seen[y]) {
          seen[y] = true;
          values[y] = v;
          queue.push_back(y);
        } else if (values[y] != v) {
          consistent = false;
          break;
        }
      }
    }
    if (consistent) {
      AbelianCharacter chi{values, {}};
      for (std::size_t x = 0; x < n; ++x)
        if (values[x] == 0) chi.kernel.push_back(static_cast<Element>(x));
      out.push_back(std::move(chi));
    }
    std::size_t k = 0;
    while (k < images.size() && ++images[k] == e) images[k++] = 0;
    if (k == images.size()) break;
  }
  if (out.size() != n) fail(ErrorCategory::internal, "character count differs from the group order");
  return out;
}

SubgroupFunction function_from_character_data(const StructurePtr& structure, std::span<const Rational> character_values) {
  const auto chars = abelian_characters(structure->group());
  if (character_values.size() != chars.size())
    fail(ErrorCategory::validation, "character data must give a value for each of the " + std::to_string(chars.size()) +
                                        " characters");
  for (const auto& v : character_values)
    if (v <= 0) fail(ErrorCategory::validation, "character data must be positive rationals");
  std::vector<Rational> values;
  for (const auto& cls : structure->classes()) {
    Rational product = 1;
    for (std::size_t i = 0; i < chars.size(); ++i) {
      const auto& ker = chars[i].kernel;
      if (std::includes(ker.begin(), ker.end(), cls.representative.begin(), cls.representative.end()))
        product *= character_values[i];
    }
    values.push_back(product);
  }
  return SubgroupFunction(structure, std::move(values));
}

SubgroupFunction dual_factorisable_quotient(const SubgroupFunction& f) {
  const auto& s = f.structure();
  const std::size_t n = s.classes().size();
  const auto contains = [&](std::size_t big, std::size_t small) {
    const auto& a = s.subgroup_class(big).representative;
    const auto& b = s.subgroup_class(small).representative;
    return std::includes(a.begin(), a.end(), b.begin(), b.end());
  };
  std::vector<bool> kernel(n, false);
  for (const auto& chi : abelian_characters(s.group())) kernel[s.class_of(chi.kernel)] = true;
  std::vector<Rational> transformed(n, 1);
  for (std::size_t k = 0; k < n; ++k) {
    if (!kernel[k]) continue;
    for (std::size_t l = 0; l < n; ++l) {
      if (!contains(l, k)) continue;
      const int mu = moebius(s.subgroup_class(l).order / s.subgroup_class(k).order);
      if (mu != 0) transformed[k] *= power(f[l], mu);
    }
  }
  std::vector<Rational> values;
  for (std::size_t h = 0; h < n; ++h) {
    Rational product = 1;
    for (std::size_t k = 0; k < n; ++k)
      if (kernel[k] && contains(k, h)) product *= transformed[k];
    values.push_back(product / f[h]);
  }
  return SubgroupFunction(f.structure_ptr(), std::move(values));
}

bool is_factorisable_abelian(const SubgroupFunction& f) {
  const auto q = dual_factorisable_quotient(f);
  return std::all_of(q.values().begin(), q.values().end(), [](const Rational& v) { return v == 1; });
}

}  // namespace regconst
