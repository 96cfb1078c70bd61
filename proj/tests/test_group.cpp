#include <doctest.h>

#include <algorithm>
#include <set>

#include "regconst/error.hpp"
#include "regconst/group.hpp"
#include "regconst/io.hpp"
#include "support/catalogue.hpp"

using namespace regconst;

namespace {

// Naive closure: multiply everything with everything until nothing new appears.
ElementSet naive_closure(const Group& g, ElementSet s) {
  s.push_back(0);
  std::set<Element> cur(s.begin(), s.end());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Element> snapshot(cur.begin(), cur.end());
    for (Element a : snapshot)
      for (Element b : snapshot)
        grew |= cur.insert(g.mul(a, b)).second;
  }
  return {cur.begin(), cur.end()};
}

std::vector<ElementSet> subsets_that_are_subgroups(const Group& g) {
  const std::size_t n = g.order();
  std::vector<ElementSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {  // identity always in
    ElementSet s;
    for (std::size_t x = 0; x < n; ++x)
      if (mask >> x & 1) s.push_back(static_cast<Element>(x));
    bool closed = true;
    for (std::size_t i = 0; i < s.size() && closed; ++i)
      for (std::size_t j = 0; j < s.size() && closed; ++j)
        closed = std::binary_search(s.begin(), s.end(), g.mul(s[i], s[j]));
    if (closed) out.push_back(std::move(s));
  }
  return out;
}

ElementSet conjugate_set(const Group& g, const ElementSet& h, Element x) {
  ElementSet out;
  for (Element e : h) out.push_back(g.conjugate(e, x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("constructors give the expected orders and exponents") {
  CHECK(cyclic_group(6)->order() == 6);
  CHECK(elementary_abelian_group(3, 2)->order() == 9);
  CHECK(elementary_abelian_group(3, 2)->exponent() == 3);
  CHECK(dihedral_group(16)->order() == 16);
  CHECK(dihedral_group(16)->exponent() == 8);
  CHECK(quaternion8_group()->order() == 8);
  CHECK(symmetric_group(4)->order() == 24);
  CHECK(heisenberg_group(3)->order() == 27);
  CHECK(heisenberg_group(3)->exponent() == 3);
  CHECK_FALSE(heisenberg_group(3)->is_abelian());
  CHECK(heisenberg_group(5)->order() == 125);
  CHECK(metacyclic_group(9, 3, 4)->order() == 27);
  CHECK(direct_product(*cyclic_group(2), *cyclic_group(3))->is_abelian());
  CHECK(testing::generalised_quaternion16()->order() == 16);
  CHECK(testing::generalised_quaternion16()->center().size() == 2);
}

TEST_CASE("quaternion group has a unique involution") {
  const auto q = quaternion8_group();
  const auto orders = q->element_orders();
  CHECK(std::count(orders.begin(), orders.end(), 2) == 1);
  CHECK(std::count(orders.begin(), orders.end(), 4) == 6);
}

TEST_CASE("closure agrees with the naive fixed point") {
  for (const auto& [name, g] : testing::core_groups()) {
    for (Element a = 0; a < g->order(); ++a)
      for (Element b = a; b < g->order(); b += 3)
        CHECK(g->closure(std::vector<Element>{a, b}) == naive_closure(*g, {a, b}));
  }
}

TEST_CASE("permutation groups") {
  const auto s3 = parse_group_spec("perm:[(0,1),(1,2)]");
  CHECK(s3->order() == 6);
  CHECK_FALSE(s3->is_abelian());
  const auto c5 = parse_group_spec("perm:[(0,1,2,3,4)]");
  CHECK(c5->order() == 5);
  CHECK(parse_group_spec("perm:[(0,1)(2,3),(0,2)(1,3)]")->order() == 4);
  std::vector<Permutation> s5{{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}};
  CHECK(group_from_generators(s5)->order() == 120);
  try {
    group_from_generators(s5, 10);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::resource);
  }
}

TEST_CASE("validating constructor rejects bad tables") {
  // Z/3 table with a broken row
  std::vector<Element> table{0, 1, 2, 1, 2, 0, 2, 0, 0};
  CHECK_THROWS_AS(Group(3, table, {1}), Error);
  std::vector<Element> good{0, 1, 2, 1, 2, 0, 2, 0, 1};
  CHECK(Group(3, good, {1}).order() == 3);
  CHECK_THROWS_AS(Group(3, good, {}), Error);
}

TEST_CASE("subgroup classes match exhaustive search") {
  for (const auto& [named, p] : testing::small_p_groups()) {
    const Group& g = *named.group;
    if (g.order() > 16) continue;
    const auto s = analyse(named.group);
    const auto all = subsets_that_are_subgroups(g);
    CHECK_MESSAGE(s->subgroup_count() == all.size(), named.name);
    std::set<ElementSet> seen;
    for (const auto& h : all) seen.insert(h);
    std::size_t total = 0;
    for (const auto& c : s->classes()) {
      total += c.class_size;
      CHECK(c.member_subgroups.size() == c.class_size);
      for (const auto& m : c.member_subgroups) CHECK(seen.count(m) == 1);
      CHECK(c.representative == c.member_subgroups.front());
      CHECK(g.closure(c.generators) == c.representative);
      // class = orbit under conjugation
      std::set<ElementSet> orbit;
      for (Element x = 0; x < g.order(); ++x) orbit.insert(conjugate_set(g, c.representative, x));
      CHECK(orbit.size() == c.class_size);
      CHECK(std::vector<ElementSet>(orbit.begin(), orbit.end()) == c.member_subgroups);
    }
    CHECK(total == all.size());
  }
  // the library oracle agrees too
  const auto d8 = dihedral_group(8);
  CHECK(all_subgroups_by_subsets(*d8).size() == subsets_that_are_subgroups(*d8).size());
}

TEST_CASE("subgroup class counts") {
  const std::map<std::string, std::pair<std::size_t, std::size_t>> expected{
      {"C6", {4, 0}}, {"V4", {5, 1}},    {"C3xC3", {6, 1}}, {"S3", {4, 1}},   {"D8", {8, 3}},
      {"Q8", {6, 1}}, {"C2^3", {16, 8}}, {"Heis3", {11, 5}}, {"D16", {11, 5}}};
  for (const auto& [name, g] : testing::core_groups()) {
    const auto s = analyse(g);
    std::size_t non_cyclic = 0;
    for (const auto& c : s->classes()) non_cyclic += !c.is_cyclic;
    CHECK_MESSAGE(s->classes().size() == expected.at(name).first, name);
    CHECK_MESSAGE(non_cyclic == expected.at(name).second, name);
  }
}

TEST_CASE("labels and ordering") {
  const auto s = analyse(elementary_abelian_group(3, 2));
  std::vector<std::string> labels;
  for (const auto& c : s->classes()) labels.push_back(c.label);
  CHECK(labels == std::vector<std::string>{"o1#1", "o3#1", "o3#2", "o3#3", "o3#4", "o9#1"});
  CHECK(s->find_label("o3#4") == 4u);
  CHECK_FALSE(s->find_label("o3#5").has_value());
  CHECK(s->subgroup_class(s->trivial_class()).order == 1);
  CHECK(s->subgroup_class(s->whole_group_class()).order == 9);
  for (std::size_t i = 1; i < s->classes().size(); ++i) {
    const auto& a = s->subgroup_class(i - 1);
    const auto& b = s->subgroup_class(i);
    CHECK((a.order < b.order || (a.order == b.order && a.representative < b.representative)));
  }
  // deterministic across runs
  const auto again = analyse(elementary_abelian_group(3, 2));
  for (std::size_t i = 0; i < s->classes().size(); ++i)
    CHECK(again->subgroup_class(i).representative == s->subgroup_class(i).representative);
}

TEST_CASE("element classes") {
  const auto s = analyse(symmetric_group(3));
  CHECK(s->element_classes().size() == 3);
  const auto h = analyse(heisenberg_group(3));
  CHECK(h->element_classes().size() == 11);
  std::size_t total = 0;
  for (const auto& c : h->element_classes()) total += c.members.size();
  CHECK(total == 27);
}

TEST_CASE("quotients are homomorphic images") {
  const auto d8 = dihedral_group(8);
  const auto q = quotient_group(*d8, d8->center());
  CHECK(q.group->order() == 4);
  CHECK(q.group->is_abelian());
  CHECK(q.group->exponent() == 2);
  for (Element a = 0; a < 8; ++a)
    for (Element b = 0; b < 8; ++b)
      CHECK(q.projection[d8->mul(a, b)] == q.group->mul(q.projection[a], q.projection[b]));
  for (Element x = 0; x < 4; ++x) CHECK(q.projection[q.lift[x]] == x);
  ElementSet reflections{0, 4};
  CHECK_THROWS_AS(quotient_group(*d8, reflections), Error);
}

TEST_CASE("subquotient types") {
  const auto v4 = elementary_abelian_group(2, 2);
  CHECK(has_quotient_type(*v4, {QuotientKind::elementary_abelian_p2, 2}));
  CHECK_FALSE(has_quotient_type(*cyclic_group(4), {QuotientKind::elementary_abelian_p2, 2}));
  CHECK(has_quotient_type(*heisenberg_group(3), {QuotientKind::heisenberg, 3}));
  CHECK_FALSE(has_quotient_type(*metacyclic_group(9, 3, 4), {QuotientKind::heisenberg, 3}));
  CHECK(has_quotient_type(*dihedral_group(16), {QuotientKind::dihedral_2n, 4}));
  CHECK(has_quotient_type(*dihedral_group(8), {QuotientKind::dihedral_2n, 3}));
  CHECK_FALSE(has_quotient_type(*quaternion8_group(), {QuotientKind::dihedral_2n, 3}));
  CHECK_FALSE(has_quotient_type(*metacyclic_group(8, 2, 3), {QuotientKind::dihedral_2n, 4}));
  CHECK(to_string(QuotientType{QuotientKind::heisenberg, 3}) == "HEISENBERG(3)");

  const auto s = analyse(heisenberg_group(3));
  const auto ea = subquotients_of_type(*s, {QuotientKind::elementary_abelian_p2, 3});
  CHECK_FALSE(ea.empty());
  for (const auto& sq : ea) {
    CHECK(sq.quotient.group->order() == 9);
    REQUIRE(sq.type.has_value());
    CHECK(sq.type->kind == QuotientKind::elementary_abelian_p2);
  }
  const auto he = subquotients_of_type(*s, {QuotientKind::heisenberg, 3});
  CHECK(he.size() == 1);
  CHECK_THROWS_AS(subquotients_of_type(*analyse(dihedral_group(8)), {QuotientKind::heisenberg, 2}), Error);
}

TEST_CASE("group spec errors") {
  const auto category = [](const std::string& spec) {
    try {
      parse_group_spec(spec);
    } catch (const Error& e) {
      return std::string(category_name(e.category()));
    }
    return std::string("none");
  };
  CHECK(category("heisenberg:4") == "validation");
  CHECK(category("elemab:4,2") == "validation");
  CHECK(category("cyclic:") == "syntax");
  CHECK(category("cyclic:3,4") == "syntax");
  CHECK(category("bogus:3") == "validation");
  CHECK(category("cyclic:300") == "resource");
  CHECK(category("symmetric:6") == "resource");
  CHECK(category("cyclic:16*cyclic:17") == "resource");
  CHECK(category("perm:[(0,1),(1,2)") == "syntax");
  CHECK(category("perm:[(0,1,0)]") == "validation");
  CHECK(category("cyclic:3 cyclic:3") == "syntax");
  CHECK(category("elemab:3,2") == "none");
  try {
    parse_group_spec("cyclic:3*?");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position 9") != std::string::npos);
  }
  CHECK(parse_group_spec("cyclic:2*cyclic:3*cyclic:2")->order() == 12);
  CHECK(parse_group_spec(" q8 ")->order() == 8);
}
