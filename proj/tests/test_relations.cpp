#include <doctest.h>

#include <set>

#include "regconst/error.hpp"
#include "regconst/matrix.hpp"
#include "regconst/relations.hpp"
#include "support/catalogue.hpp"

using namespace regconst;

namespace {

// Number of left cosets xH fixed by g, counted directly.
std::int64_t fixed_cosets(const Group& g, const ElementSet& h, Element e) {
  std::set<ElementSet> cosets;
  for (Element x = 0; x < g.order(); ++x) {
    ElementSet c;
    for (Element y : h) c.push_back(g.mul(x, y));
    std::sort(c.begin(), c.end());
    cosets.insert(c);
  }
  std::int64_t n = 0;
  for (const auto& c : cosets) {
    ElementSet moved;
    for (Element y : c) moved.push_back(g.mul(e, y));
    std::sort(moved.begin(), moved.end());
    n += moved == c;
  }
  return n;
}

std::vector<std::int64_t> coeffs_of(const GRelation& r) { return {r.coeffs().begin(), r.coeffs().end()}; }

}  // namespace

TEST_CASE("permutation characters count fixed cosets") {
  for (const auto& [name, g] : testing::core_groups()) {
    const auto s = analyse(g);
    const IntMatrix table = permutation_character_table(*s);
    CHECK(table.rows() == s->element_classes().size());
    CHECK(table.cols() == s->classes().size());
    for (std::size_t c = 0; c < s->classes().size(); ++c) {
      const auto chi = permutation_character(*s, c);
      for (std::size_t k = 0; k < s->element_classes().size(); ++k) {
        const Element e = s->element_classes()[k].representative();
        CHECK_MESSAGE(chi.values[k] == fixed_cosets(*g, s->subgroup_class(c).representative, e), name);
        CHECK(table(k, c) == chi.values[k]);
      }
    }
  }
}

TEST_CASE("relation basis spans the character kernel") {
  for (const auto& [name, g] : testing::core_groups()) {
    const auto s = analyse(g);
    const auto basis = relation_basis(s);
    std::size_t non_cyclic = 0;
    for (const auto& c : s->classes()) non_cyclic += !c.is_cyclic;
    CHECK_MESSAGE(basis.size() == non_cyclic, name);
    const IntMatrix table = permutation_character_table(*s);
    CHECK(basis.size() + rank(to_rational(table)) == s->classes().size());
    for (const auto& rel : basis) {
      CHECK(is_relation(rel));
      CHECK(rel.coefficient_sum() == 0);
      for (std::size_t k = 0; k < table.rows(); ++k) {
        Integer sum = 0;
        for (std::size_t c = 0; c < table.cols(); ++c) sum += table(k, c) * rel.coeff(c);
        CHECK(sum == 0);
      }
    }
  }
}

TEST_CASE("known relations") {
  CHECK(coeffs_of(relation_basis(analyse(elementary_abelian_group(2, 2))).at(0)) ==
        std::vector<std::int64_t>{1, -1, -1, -1, 2});
  CHECK(coeffs_of(relation_basis(analyse(elementary_abelian_group(3, 2))).at(0)) ==
        std::vector<std::int64_t>{1, -1, -1, -1, -1, 3});
  // S3: 1 - 2 C2 - C3 + 2 S3
  CHECK(coeffs_of(relation_basis(analyse(symmetric_group(3))).at(0)) == std::vector<std::int64_t>{1, -2, -1, 2});
  CHECK(relation_basis(analyse(cyclic_group(12))).empty());
}

TEST_CASE("relation membership and arithmetic") {
  const auto s = analyse(elementary_abelian_group(2, 2));
  const GRelation r(s, {1, -1, -1, -1, 2});
  CHECK(is_relation(r));
  CHECK(is_relation(3 * r + r));
  CHECK_FALSE(is_relation(GRelation(s, {1, -1, -1, -1, 1})));
  CHECK((r + (-1) * r).is_zero());
  CHECK(r.support().size() == 5);
  CHECK(is_relation(s, {{0, 1}, {1, -1}, {2, -1}, {3, -1}, {4, 2}}));
  CHECK_THROWS_AS(is_relation(s, {{9, 1}}), Error);
  CHECK_THROWS_AS(GRelation(s, {1, 2}), Error);
}

TEST_CASE("induction and inflation") {
  // Heisenberg(3) with H = G, B = 1: the relation maps to itself on the same classes.
  const auto s = analyse(heisenberg_group(3));
  const auto z = s->group().center();
  const Subquotient whole = make_subquotient(*s, s->whole_group_class(), ElementSet{0});
  const auto& qs = whole.quotient_structure;
  // pick two non-central, non-conjugate order-3 classes I, J
  std::vector<std::size_t> order3;
  for (std::size_t c = 0; c < qs->classes().size(); ++c)
    if (qs->subgroup_class(c).order == 3 && !qs->subgroup_class(c).is_normal()) order3.push_back(c);
  REQUIRE(order3.size() == 4);
  const auto with_center = [&](std::size_t c) {
    ElementSet gens = qs->subgroup_class(c).representative;
    const auto zq = qs->group().center();
    gens.insert(gens.end(), zq.begin(), zq.end());
    return qs->class_of(qs->group().closure(gens));
  };
  GRelation theta = GRelation::zero(qs);
  theta.add(order3[0], 1);
  theta.add(with_center(order3[0]), -1);
  theta.add(order3[1], -1);
  theta.add(with_center(order3[1]), 1);
  REQUIRE(is_relation(theta));
  const GRelation lifted = induce_inflate(s, whole, theta);
  CHECK(is_relation(lifted));
  CHECK(lifted.support().size() == 4);
  std::vector<std::int64_t> values;
  for (const auto& [c, n] : lifted.support()) values.push_back(n);
  std::sort(values.begin(), values.end());
  CHECK(values == std::vector<std::int64_t>{-1, -1, 1, 1});

  // inflation from D8/Z: relation of V4 lands on the preimages
  const auto d8 = analyse(dihedral_group(8));
  const Subquotient top = make_subquotient(*d8, d8->whole_group_class(), d8->group().center());
  const auto v4rel = relation_basis(top.quotient_structure).at(0);
  const GRelation inf = induce_inflate(d8, top, v4rel);
  CHECK(is_relation(inf));
  CHECK(inf.coeff(d8->class_of(d8->group().center())) == 1);
  CHECK(inf.coeff(d8->whole_group_class()) == 2);

  CHECK_THROWS_AS(induce_inflate(d8, top, GRelation(top.quotient_structure, {1, 0, 0, 0, 0})), Error);
}

TEST_CASE("Bouc generators") {
  const auto e9 = analyse(elementary_abelian_group(3, 2));
  const auto gens = bouc_generators(e9, 3);
  REQUIRE(gens.size() == 1);
  CHECK(coeffs_of(gens[0].relation) == std::vector<std::int64_t>{1, -1, -1, -1, -1, 3});

  const auto d16 = analyse(dihedral_group(16));
  bool found_top = false;
  for (const auto& g : bouc_generators(d16, 2)) {
    CHECK(is_relation(g.relation));
    CHECK(g.relation.coefficient_sum() == 0);
    if (g.source.h_class == d16->whole_group_class() && g.source.b.size() == 1) {
      REQUIRE(g.source.type.has_value());
      CHECK(g.source.type->kind == QuotientKind::dihedral_2n);
      CHECK(g.relation.support().size() == 4);
      found_top = true;
    }
  }
  CHECK(found_top);

  CHECK_THROWS_AS(bouc_generators(analyse(symmetric_group(3)), 2), Error);
  CHECK_THROWS_AS(bouc_generators(analyse(dihedral_group(8)), 3), Error);
}

TEST_CASE("Bouc generators span the relation lattice of small p-groups") {
  for (const auto& [named, p] : testing::small_p_groups()) {
    const auto s = analyse(named.group);
    std::vector<GRelation> lifted;
    for (const auto& g : bouc_generators(s, p)) lifted.push_back(g.relation);
    const auto basis = relation_basis(s);
    CHECK_MESSAGE(same_lattice(lifted, basis), named.name);
    CHECK(relation_lattice(lifted, s->classes().size()) == relation_lattice(basis, s->classes().size()));
  }
}

TEST_CASE("lattice comparison") {
  const auto s = analyse(elementary_abelian_group(2, 2));
  const GRelation r(s, {1, -1, -1, -1, 2});
  const std::vector<GRelation> a{r}, b{2 * r}, c{r, 2 * r};
  CHECK(same_lattice(a, c));
  CHECK_FALSE(same_lattice(a, b));
}
