// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "regconst/arithmetic.hpp"
#include "regconst/factorisability.hpp"
#include "regconst/io.hpp"
#include "regconst/lattice.hpp"
#include "support/catalogue.hpp"
#include "support/random_lattices.hpp"

using namespace regconst;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    pass_ = pass_ && ok;
  }
  Outcome finish(const std::string& summary) const {
    std::ostringstream s;
    s << checks_ << " checks, " << summary;
    if (!pass_) s << "; first failure: " << first_failure_;
    return {pass_, s.str()};
  }

 private:
  bool pass_ = true;
  std::size_t checks_ = 0;
  std::string first_failure_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

std::vector<GLattice> standard_lattices(const StructurePtr& s) {
  std::vector<GLattice> out{trivial_lattice(s), regular_lattice(s), cyclic_quotient_lattice(s),
                            augmentation_lattice(s)};
  for (std::size_t c = 0; c < s->classes().size(); ++c) out.push_back(coset_lattice(s, c));
  return out;
}

struct Core {
  std::string name;
  StructurePtr structure;
  std::vector<GRelation> basis;
};

std::vector<Core> core_set;

Outcome relation_ranks() {
  Tally t;
  const auto start = Clock::now();
  for (const auto& [name, g] : testing::core_groups()) {
    const auto s = analyse(g);
    auto basis = relation_basis(s);
    std::size_t non_cyclic = 0;
    for (const auto& c : s->classes()) non_cyclic += !c.is_cyclic;
    t.expect(basis.size() == non_cyclic, name + " rank");
    for (const auto& r : basis) t.expect(is_relation(r), name + " basis element is a relation");
    core_set.push_back({name, s, std::move(basis)});
  }
  const double secs = seconds_since(start);
  t.expect(secs < 30, "runtime");
  return t.finish("9 groups in " + fmt_seconds(secs));
}

Outcome closed_forms() {
  Tally t;
  for (const auto& [name, s, basis] : core_set) {
    const GLattice a = cyclic_quotient_lattice(s), i = augmentation_lattice(s);
    for (const auto& rel : basis) {
      const Rational ca = regulator_constant(a, rel).value, ci = regulator_constant(i, rel).value;
      t.expect(ca == subgroup_order_product(rel), name + " C(A)");
      t.expect(ci == 1 / subgroup_order_product(rel), name + " C(I)");
      t.expect(ca * ci == 1, name + " C(A)C(I)");
    }
  }
  return t.finish("A and I over every basis relation");
}

Outcome trivial_and_cyclic() {
  Tally t;
  for (const auto& [name, s, basis] : core_set) {
    const GLattice z = trivial_lattice(s);
    for (const auto& rel : basis) {
      t.expect(regulator_constant(z, rel).value == 1 / subgroup_order_product(rel), name + " C(Z)");
      for (std::size_t c = 0; c < s->classes().size(); ++c)
        if (s->subgroup_class(c).is_cyclic)
          t.expect(regulator_constant(coset_lattice(s, c), rel).value == 1, name + " C(Z[G/C])");
    }
  }
  const auto v4 = analyse(elementary_abelian_group(2, 2));
  t.expect(regulator_constant(trivial_lattice(v4), GRelation(v4, {1, -1, -1, -1, 2})).value == Rational(1, 2),
           "V4 spot value");
  const auto e9 = analyse(elementary_abelian_group(3, 2));
  t.expect(regulator_constant(trivial_lattice(e9), GRelation(e9, {1, -1, -1, -1, -1, 3})).value == Rational(1, 9),
           "C3xC3 spot value");

  const auto h = analyse(heisenberg_group(3));
  const auto& g = h->group();
  const ElementSet z = g.center();
  std::vector<std::size_t> order3;
  for (std::size_t c = 0; c < h->classes().size(); ++c)
    if (h->subgroup_class(c).order == 3 && !h->subgroup_class(c).is_normal()) order3.push_back(c);
  t.expect(order3.size() >= 2, "Heisenberg has two non-central classes of order 3");
  if (order3.size() >= 2) {
    const auto with_z = [&](std::size_t c) {
      ElementSet gens = h->subgroup_class(c).representative;
      gens.insert(gens.end(), z.begin(), z.end());
      return h->class_of(g.closure(gens));
    };
    GRelation theta = GRelation::zero(h);
    theta.add(order3[0], 1);
    theta.add(with_z(order3[0]), -1);
    theta.add(order3[1], -1);
    theta.add(with_z(order3[1]), 1);
    t.expect(is_relation(theta), "I - IZ - J + JZ is a relation");
    t.expect(regulator_constant(trivial_lattice(h), theta).value == 1, "Heisenberg spot value");
  }
  return t.finish("Z, cyclic cosets and spot values");
}

Outcome pairing_independence() {
  Tally t;
  std::mt19937_64 rng(20240601);
  for (const auto& [name, s, basis] : core_set) {
    for (int k = 0; k < 20; ++k) {
      const GLattice lat = testing::random_lattice(s, rng);
      const Pairing other = testing::rebased_pairing(lat, rng);
      for (const auto& rel : basis)
        t.expect(regulator_constant(lat, rel).value == regulator_constant(lat, rel, other).value,
                 name + " " + lat.label());
    }
  }
  return t.finish("20 random lattices per group");
}

Outcome index_formula() {
  Tally t;
  for (const char* spec : {"elemab:2,2", "elemab:3,2"}) {
    const auto s = analyse(parse_group_spec(spec));
    for (const auto& lat : {regular_lattice(s), cyclic_quotient_lattice(s)}) {
      for (long k = 1; k <= 3; ++k) {
        IntMatrix embed = IntMatrix::identity(lat.rank());
        for (std::size_t i = 0; i < lat.rank(); ++i) embed(i, i) = k;
        for (const auto& rel : relation_basis(s))
          t.expect(index_ratio_check(lat, lat, embed, rel).holds, std::string(spec) + " " + lat.label());
      }
    }
  }
  return t.finish("k = 1, 2, 3 on Reg and A");
}

Outcome bouc_span() {
  Tally t;
  const auto start = Clock::now();
  std::size_t groups = 0;
  for (const auto& [named, p] : testing::small_p_groups()) {
    const std::uint64_t n = named.group->order();
    if (16 % n != 0 && 27 % n != 0) continue;
    const auto s = analyse(named.group);
    std::vector<GRelation> spanned;
    for (const auto& gen : bouc_generators(s, p)) spanned.push_back(gen.relation);
    t.expect(same_lattice(spanned, relation_basis(s)), named.name);
    ++groups;
  }
  const double secs = seconds_since(start);
  t.expect(secs < 60, "runtime");
  return t.finish(std::to_string(groups) + " p-groups in " + fmt_seconds(secs));
}

Outcome functoriality() {
  Tally t;
  std::size_t inflations = 0, restrictions = 0;
  for (const char* spec : {"dihedral:8", "heisenberg:3"}) {
    const auto s = analyse(parse_group_spec(spec));
    const Subquotient top = make_subquotient(*s, s->whole_group_class(), s->group().center());
    const auto& qs = top.quotient_structure;
    const auto qrels = relation_basis(qs);
    const auto lats = standard_lattices(qs);
    for (std::size_t i = 0; i < lats.size() && inflations < (spec[0] == 'd' ? 5u : 10u); ++i) {
      const GRelation& rel = qrels[i % qrels.size()];
      const GLattice inflated = inflate(lats[i], s, top.quotient);
      t.expect(regulator_constant(inflated, induce_inflate(s, top, rel)).value == regulator_constant(lats[i], rel).value,
               std::string(spec) + " inflation of " + lats[i].label());
      ++inflations;
    }
  }
  for (const char* spec : {"elemab:3,2", "dihedral:16"}) {
    const auto s = analyse(parse_group_spec(spec));
    const std::vector<GLattice> lats{cyclic_quotient_lattice(s), augmentation_lattice(s), trivial_lattice(s),
                                     regular_lattice(s)};
    const std::size_t quota = spec[0] == 'e' ? 2 : 10;
    for (std::size_t c = 0; c < s->classes().size(); ++c) {
      if (s->subgroup_class(c).is_cyclic) continue;
      const Subquotient sub = make_subquotient(*s, c, ElementSet{0});
      const auto rels = relation_basis(sub.quotient_structure);
      for (std::size_t j = 0; j < 2 && restrictions < quota; ++j) {
        const GLattice& lat = lats[restrictions % lats.size()];
        const GRelation& rel = rels[(restrictions + j) % rels.size()];
        t.expect(regulator_constant(lat, induce_inflate(s, sub, rel)).value ==
                     regulator_constant(restrict_to(lat, sub), rel).value,
                 std::string(spec) + " restriction to " + s->subgroup_class(c).label);
        ++restrictions;
      }
    }
  }
  t.expect(inflations == 10 && restrictions == 10, "instance counts");
  return t.finish(std::to_string(inflations) + " inflation and " + std::to_string(restrictions) +
                  " restriction instances");
}

Outcome factorisability() {
  Tally t;
  const char* abelian[] = {"cyclic:2", "cyclic:4",  "elemab:2,2",         "cyclic:6",          "cyclic:8",
                           "cyclic:4*cyclic:2",     "elemab:2,3",         "elemab:3,2",        "cyclic:9",
                           "cyclic:12",             "cyclic:2*cyclic:6",  "cyclic:16",         "elemab:2,4",
                           "cyclic:4*cyclic:4",     "cyclic:8*cyclic:2",  "cyclic:4*elemab:2,2"};
  std::mt19937_64 rng(8);
  const auto random_rational = [&] {
    Rational v(static_cast<long>(rng() % 12 + 1), static_cast<long>(rng() % 12 + 1));
    v.canonicalize();
    return v;
  };
  for (int k = 0; k < 50; ++k) {
    const auto s = analyse(parse_group_spec(abelian[k % std::size(abelian)]));
    std::vector<Rational> values;
    for (std::size_t c = 0; c < s->classes().size(); ++c) values.push_back(random_rational());
    const auto q = factorisable_quotient(SubgroupFunction(s, values));
    for (std::size_t c = 0; c < s->classes().size(); ++c)
      if (s->subgroup_class(c).is_cyclic) t.expect(q[c] == 1, "cyclic vanishing");
    std::vector<Rational> data;
    for (std::size_t i = 0; i < s->group().order(); ++i) data.push_back(random_rational());
    t.expect(is_factorisable_abelian(function_from_character_data(s, data)), "character data round trip");
  }
  const auto v4 = analyse(elementary_abelian_group(2, 2));
  const auto f = SubgroupFunction::order_function(v4);
  t.expect(factorisable_quotient(f)[v4->whole_group_class()] == 2, "V4 order function quotient");
  t.expect(!is_factorisable_abelian(f), "V4 order function not factorisable");
  return t.finish("50 random functions and round trips");
}

Outcome checker_fixtures() {
  Tally t;
  const std::string dir = REGCONST_FIXTURE_DIR;
  const auto good = load_profile(dir + "/elemab32_good.json");
  const auto bad = load_profile(dir + "/elemab32_bad.json");
  const auto rels = relation_basis(good.structure_ptr());
  const Verdict mb = minkowski_factor_check(bad, rels);
  t.expect(!mb.overall && mb.residuals.at(0) == 9, "all h = 1 fails with residual 9");
  t.expect(minkowski_factor_check(good, rels).overall, "h = 3, 3, 1, ... passes");
  const Verdict bb = bouc_condition_check(bad);
  t.expect(!bb.overall && bb.residuals.at(0) == 9, "Bouc condition fails on all h = 1");
  t.expect(bouc_condition_check(good).overall, "Bouc condition passes on the good profile");
  t.expect(brauer_kuroda_residual(good, rels[0]) == 1, "good fixture is Brauer-Kuroda consistent");

  // consistent data built by solving for R at the trivial class, then single perturbations
  const auto& s = good.structure_ptr();
  const GRelation& rel = rels[0];
  const long hs[] = {2, 3, 3, 1, 5, 7};
  std::vector<ClassInvariants> c(6);
  Rational rest = 1;
  for (std::size_t i = 0; i < 6; ++i) {
    c[i].h = hs[i];
    c[i].w = 2;
    c[i].R = 1;
    if (i > 0) rest *= power(Rational(hs[i], 2), rel.coeff(i));
  }
  c[0].R = Rational(2, hs[0]) / rest;
  t.expect(brauer_kuroda_residual(ArithmeticProfile(s, c), rel) == 1, "constructed fixture consistent");
  for (std::size_t i = 0; i < 6; ++i) {
    for (int field = 0; field < 3; ++field) {
      auto p = c;
      if (field == 0) p[i].h = *p[i].h * 2;
      if (field == 1) p[i].w = *p[i].w * 3;
      if (field == 2) p[i].R = *p[i].R * 5;
      t.expect(brauer_kuroda_residual(ArithmeticProfile(s, p), rel) != 1, "perturbation detected");
    }
  }
  return t.finish("fixtures and 18 perturbations");
}

Outcome tower_identity() {
  Tally t;
  for (const auto& [name, s, basis] : core_set) {
    for (std::size_t m = 0; m <= 2; ++m) {
      const GLattice tower = tower_target_lattice(s, m);
      for (const auto& rel : basis)
        t.expect(regulator_constant(tower, rel).value == regulator_constant(trivial_lattice(s), rel).value,
                 name + " m = " + std::to_string(m));
    }
  }
  return t.finish("m = 0, 1, 2");
}

Outcome coprime_valuations() {
  Tally t;
  const Integer three = 3;
  for (const char* spec : {"dihedral:8", "q8", "dihedral:16"}) {
    const auto s = analyse(parse_group_spec(spec));
    const auto basis = relation_basis(s);
    for (const auto& lat : standard_lattices(s))
      for (const auto& rel : basis)
        t.expect(regulator_constant(lat, rel).valuation_at(three) == 0, std::string(spec) + " " + lat.label());
    for (std::size_t m = 0; m <= 1; ++m)
      for (const auto& rel : basis) t.expect(tower_target_constant(s, m, rel).valuation_at(three) == 0, spec);
  }
  return t.finish("v_3 over 2-groups");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"relation ranks", relation_ranks},
      {"closed forms for A and I", closed_forms},
      {"trivial and cyclic coset lattices", trivial_and_cyclic},
      {"pairing independence", pairing_independence},
      {"index formula", index_formula},
      {"Bouc generators span the relations", bouc_span},
      {"inflation and restriction", functoriality},
      {"factorisability", factorisability},
      {"checker fixtures", checker_fixtures},
      {"tower identity", tower_identity},
      {"coprime valuations vanish", coprime_valuations},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << " (" << o.detail << ")"
              << std::endl;
  }
  return all ? 0 : 1;
}
