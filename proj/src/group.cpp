#include "regconst/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "regconst/error.hpp"
#include "regconst/rational.hpp"

namespace regconst {

namespace {

void check_order(std::size_t order) {
  if (order == 0) fail(ErrorCategory::validation, "group order must be positive");
  if (order > kMaxGroupOrder)
    fail(ErrorCategory::resource, "group of order " + std::to_string(order) + " exceeds the supported maximum " +
                                      std::to_string(kMaxGroupOrder));
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    result *= base;
    if (result > kMaxGroupOrder)
      fail(ErrorCategory::resource, "group order " + std::to_string(base) + "^" + std::to_string(exponent) +
                                        " exceeds the supported maximum " + std::to_string(kMaxGroupOrder));
  }
  return result;
}

std::vector<Element> dedupe_generators(std::vector<Element> gens) {
  std::vector<Element> out;
  for (Element g : gens) {
    if (g != 0 && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  if (out.empty()) out.push_back(0);
  return out;
}

}  // namespace

Group::Group(std::size_t order, std::vector<Element> table, std::vector<Element> generators, std::string description)
    : order_(order), table_(std::move(table)), generators_(std::move(generators)), description_(std::move(description)) {
  check_order(order_);
  if (table_.size() != order_ * order_) fail(ErrorCategory::validation, "multiplication table has the wrong size");
  for (Element x : table_)
    if (x >= order_) fail(ErrorCategory::validation, "multiplication table entry out of range");
  for (std::size_t a = 0; a < order_; ++a) {
    if (mul(0, static_cast<Element>(a)) != a || mul(static_cast<Element>(a), 0) != a)
      fail(ErrorCategory::validation, "element 0 is not a two-sided identity");
  }
  for (std::size_t a = 0; a < order_; ++a) {
    std::vector<bool> row(order_, false);
    std::vector<bool> col(order_, false);
    for (std::size_t b = 0; b < order_; ++b) {
      row[table_[a * order_ + b]] = true;
      col[table_[b * order_ + a]] = true;
    }
    if (std::find(row.begin(), row.end(), false) != row.end() || std::find(col.begin(), col.end(), false) != col.end())
      fail(ErrorCategory::validation, "multiplication table row or column is not a permutation");
  }
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b)
      for (std::size_t c = 0; c < order_; ++c) {
        const auto x = static_cast<Element>(a), y = static_cast<Element>(b), z = static_cast<Element>(c);
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) fail(ErrorCategory::validation, "multiplication is not associative");
      }
  if (generators_.empty()) fail(ErrorCategory::validation, "generating set is empty");
  for (Element g : generators_)
    if (g >= order_) fail(ErrorCategory::validation, "generator index out of range");
  finish();
  if (closure(generators_).size() != order_) fail(ErrorCategory::validation, "generators do not generate the group");
}

Group::Group(Trusted, std::size_t order, std::vector<Element> table, std::vector<Element> generators,
             std::string description)
    : order_(order), table_(std::move(table)), generators_(std::move(generators)), description_(std::move(description)) {
  check_order(order_);
  finish();
}

Group Group::trusted(std::size_t order, std::vector<Element> table, std::vector<Element> generators,
                     std::string description) {
  return Group(Trusted{}, order, std::move(table), std::move(generators), std::move(description));
}

void Group::finish() {
  inverses_.assign(order_, 0);
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b)
      if (table_[a * order_ + b] == 0) inverses_[a] = static_cast<Element>(b);
  element_orders_.assign(order_, 1);
  for (std::size_t a = 0; a < order_; ++a) {
    Element x = static_cast<Element>(a);
    std::size_t k = 1;
    while (x != 0) {
      x = mul(x, static_cast<Element>(a));
      ++k;
    }
    element_orders_[a] = k;
  }
}

Element Group::power(Element g, std::uint64_t k) const {
  Element result = 0;
  for (std::uint64_t i = 0; i < k % element_orders_[g]; ++i) result = mul(result, g);
  return result;
}

bool Group::is_abelian() const {
  for (Element a : generators_)
    for (Element b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool Group::is_p_group(std::uint64_t p) const {
  if (!is_prime(p)) return false;
  std::size_t n = order_;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::size_t Group::exponent() const {
  std::size_t e = 1;
  for (std::size_t k : element_orders_) e = std::lcm(e, k);
  return e;
}

ElementSet Group::closure(std::span<const Element> gens) const {
  std::vector<bool> seen(order_, false);
  std::vector<Element> elements{0};
  seen[0] = true;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (Element g : gens) {
      const Element y = mul(elements[i], g);
      if (!seen[y]) {
        seen[y] = true;
        elements.push_back(y);
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

ElementSet Group::center() const {
  ElementSet out;
  for (std::size_t a = 0; a < order_; ++a) {
    const auto x = static_cast<Element>(a);
    if (std::all_of(generators_.begin(), generators_.end(), [&](Element g) { return mul(x, g) == mul(g, x); }))
      out.push_back(x);
  }
  return out;
}

bool Group::is_subgroup(std::span<const Element> set) const {
  if (set.empty()) return false;
  std::vector<bool> member(order_, false);
  for (Element x : set) {
    if (x >= order_) return false;
    member[x] = true;
  }
  if (!member[0]) return false;
  for (Element a : set)
    for (Element b : set)
      if (!member[mul(a, b)]) return false;
  return true;
}

bool Group::is_normal_in(std::span<const Element> normal, std::span<const Element> ambient) const {
  std::vector<bool> member(order_, false);
  for (Element x : normal) member[x] = true;
  for (Element x : ambient)
    for (Element n : normal)
      if (!member[conjugate(n, x)]) return false;
  return true;
}

// ---- constructors -------------------------------------------------------

GroupPtr group_from_generators(std::span<const Permutation> perms, std::size_t element_budget) {
  if (perms.empty()) fail(ErrorCategory::validation, "empty generator set");
  const std::size_t degree = perms.front().size();
  if (degree == 0) fail(ErrorCategory::validation, "permutations on an empty set");
  for (const auto& p : perms) {
    if (p.size() != degree) fail(ErrorCategory::validation, "permutations act on different ground sets");
    std::vector<bool> hit(degree, false);
    for (auto x : p) {
      if (x >= degree || hit[x]) fail(ErrorCategory::validation, "generator is not a bijection");
      hit[x] = true;
    }
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::map<Permutation, Element> index{{id, 0}};
  std::vector<Permutation> elements{id};
  const auto compose = [degree](const Permutation& a, const Permutation& b) {
    Permutation c(degree);
    for (std::size_t i = 0; i < degree; ++i) c[i] = a[b[i]];
    return c;
  };
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& s : perms) {
      Permutation y = compose(elements[i], s);
      if (index.count(y)) continue;
      if (elements.size() >= element_budget)
        fail(ErrorCategory::resource, "closure exceeds the element budget of " + std::to_string(element_budget));
      index.emplace(y, static_cast<Element>(elements.size()));
      elements.push_back(std::move(y));
    }
  }
  const std::size_t n = elements.size();
  check_order(n);
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(compose(elements[a], elements[b]));
  std::vector<Element> gens;
  for (const auto& s : perms) gens.push_back(index.at(s));
  return std::make_shared<const Group>(
      Group::trusted(n, std::move(table), dedupe_generators(gens), "permutation group of order " + std::to_string(n)));
}

GroupPtr cyclic_group(std::size_t n) {
  check_order(n);
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Element>((a + b) % n);
  return std::make_shared<const Group>(
      Group::trusted(n, std::move(table), dedupe_generators({n > 1 ? 1u : 0u}), "C" + std::to_string(n)));
}

GroupPtr elementary_abelian_group(std::uint64_t p, std::size_t k) {
  if (!is_prime(p)) fail(ErrorCategory::validation, std::to_string(p) + " is not prime");
  const std::size_t n = checked_power(p, k);
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t x = a, y = b, sum = 0, place = 1;
      for (std::size_t i = 0; i < k; ++i) {
        sum += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
      }
      table[a * n + b] = static_cast<Element>(sum);
    }
  }
  std::vector<Element> gens;
  std::size_t place = 1;
  for (std::size_t i = 0; i < k; ++i, place *= p) gens.push_back(static_cast<Element>(place));
  return std::make_shared<const Group>(Group::trusted(n, std::move(table), dedupe_generators(gens),
                                                      "(C" + std::to_string(p) + ")^" + std::to_string(k)));
}

GroupPtr dihedral_group(std::size_t order) {
  if (order < 2 || order % 2 != 0) fail(ErrorCategory::validation, "dihedral group order must be even and at least 2");
  check_order(order);
  const std::size_t n = order / 2;
  // r^i -> i, s r^i -> n + i; r s = s r^{-1}
  std::vector<Element> table(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      const bool sa = a >= n, sb = b >= n;
      const std::size_t i = a % n, j = b % n;
      std::size_t result;
      if (!sa && !sb) result = (i + j) % n;
      else if (!sa && sb) result = n + (n - i + j) % n;
      else if (sa && !sb) result = n + (i + j) % n;
      else result = (n - i + j) % n;
      table[a * order + b] = static_cast<Element>(result);
    }
  }
  return std::make_shared<const Group>(Group::trusted(order, std::move(table),
                                                      dedupe_generators({n > 1 ? 1u : 0u, static_cast<Element>(n)}),
                                                      "D" + std::to_string(order)));
}

GroupPtr quaternion8_group() {
  // index = 2 * unit + (negative ? 1 : 0), units 1, i, j, k
  static constexpr int kUnitProduct[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<Element> table(64);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      int sign = kSign[ua][ub] * (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1);
      table[a * 8 + b] = static_cast<Element>(2 * kUnitProduct[ua][ub] + (sign < 0 ? 1 : 0));
    }
  }
  return std::make_shared<const Group>(Group::trusted(8, std::move(table), {2, 4}, "Q8"));
}

GroupPtr symmetric_group(std::size_t n) {
  if (n == 0) fail(ErrorCategory::validation, "symmetric group needs at least one point");
  Permutation cycle(n), swap(n);
  for (std::size_t i = 0; i < n; ++i) {
    cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
    swap[i] = static_cast<std::uint32_t>(i);
  }
  if (n > 1) std::swap(swap[0], swap[1]);
  const std::vector<Permutation> gens{cycle, swap};
  auto g = group_from_generators(gens);
  return std::make_shared<const Group>(Group::trusted(g->order(), std::vector<Element>(g->table().begin(), g->table().end()),
                                                      std::vector<Element>(g->generators().begin(), g->generators().end()),
                                                      "S" + std::to_string(n)));
}

GroupPtr heisenberg_group(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCategory::validation, std::to_string(p) + " is not prime");
  const std::size_t n = checked_power(p, 3);
  // (a, b, c) <-> [[1, a, c], [0, 1, b], [0, 0, 1]], index a + p b + p^2 c
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t a = x % p, b = (x / p) % p, c = x / (p * p);
      const std::size_t a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
      const std::size_t ra = (a + a2) % p, rb = (b + b2) % p, rc = (c + c2 + a * b2) % p;
      table[x * n + y] = static_cast<Element>(ra + p * rb + p * p * rc);
    }
  }
  return std::make_shared<const Group>(Group::trusted(n, std::move(table), {1, static_cast<Element>(p)},
                                                      "Heisenberg(" + std::to_string(p) + ")"));
}

GroupPtr direct_product(const Group& a, const Group& b) {
  const std::size_t na = a.order(), nb = b.order();
  const std::size_t n = na * nb;
  check_order(n);
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto ax = static_cast<Element>(x / nb), bx = static_cast<Element>(x % nb);
      const auto ay = static_cast<Element>(y / nb), by = static_cast<Element>(y % nb);
      table[x * n + y] = static_cast<Element>(a.mul(ax, ay) * nb + b.mul(bx, by));
    }
  std::vector<Element> gens;
  for (Element g : a.generators()) gens.push_back(static_cast<Element>(g * nb));
  for (Element g : b.generators()) gens.push_back(g);
  return std::make_shared<const Group>(Group::trusted(n, std::move(table), dedupe_generators(gens),
                                                      "(" + a.description() + " x " + b.description() + ")"));
}

GroupPtr semidirect_product(const Group& a, const Group& b, std::span<const Permutation> action) {
  const std::size_t na = a.order(), nb = b.order();
  if (action.size() != b.generators().size())
    fail(ErrorCategory::validation, "semidirect action needs one automorphism per generator of the acting group");
  for (const auto& phi : action) {
    if (phi.size() != na) fail(ErrorCategory::validation, "semidirect action permutation has the wrong size");
    std::vector<bool> hit(na, false);
    for (auto x : phi) {
      if (x >= na || hit[x]) fail(ErrorCategory::validation, "semidirect action is not a permutation");
      hit[x] = true;
    }
    for (std::size_t x = 0; x < na; ++x)
      for (std::size_t y = 0; y < na; ++y)
        if (phi[a.mul(static_cast<Element>(x), static_cast<Element>(y))] !=
            a.mul(static_cast<Element>(phi[x]), static_cast<Element>(phi[y])))
          fail(ErrorCategory::validation, "semidirect action is not by automorphisms");
  }
  // Extend generator images to all of B: phi(b s) = phi(b) o phi(s).
  std::vector<Permutation> phi(nb);
  Permutation id(na);
  std::iota(id.begin(), id.end(), 0u);
  phi[0] = id;
  std::vector<Element> order{0};
  std::vector<bool> seen(nb, false);
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Element x = order[i];
    for (std::size_t k = 0; k < b.generators().size(); ++k) {
      const Element y = b.mul(x, b.generators()[k]);
      Permutation composed(na);
      for (std::size_t t = 0; t < na; ++t) composed[t] = phi[x][action[k][t]];
      if (!seen[y]) {
        seen[y] = true;
        phi[y] = std::move(composed);
        order.push_back(y);
      } else if (phi[y] != composed) {
        fail(ErrorCategory::validation, "semidirect action is not a homomorphism");
      }
    }
  }
  const std::size_t n = na * nb;
  check_order(n);
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto ax = static_cast<Element>(x % na), bx = static_cast<Element>(x / na);
      const auto ay = static_cast<Element>(y % na), by = static_cast<Element>(y / na);
      const Element ra = a.mul(ax, static_cast<Element>(phi[bx][ay]));
      const Element rb = b.mul(bx, by);
      table[x * n + y] = static_cast<Element>(ra + na * rb);
    }
  std::vector<Element> gens;
  for (Element g : a.generators()) gens.push_back(g);
  for (Element g : b.generators()) gens.push_back(static_cast<Element>(g * na));
  return std::make_shared<const Group>(Group::trusted(n, std::move(table), dedupe_generators(gens),
                                                      "(" + a.description() + " x| " + b.description() + ")"));
}

GroupPtr metacyclic_group(std::size_t n, std::size_t m, std::size_t r) {
  auto a = cyclic_group(n);
  auto b = cyclic_group(m);
  Permutation phi(n);
  for (std::size_t x = 0; x < n; ++x) phi[x] = static_cast<std::uint32_t>((x * r) % n);
  std::vector<Permutation> action(b->generators().size(), phi);
  if (m == 1) {
    std::iota(action[0].begin(), action[0].end(), 0u);
  }
  return semidirect_product(*a, *b, action);
}

// ---- subgroup structure -------------------------------------------------

GroupStructure::GroupStructure(GroupPtr group) : group_(std::move(group)) {
  const Group& g = *group_;
  const std::size_t n = g.order();

  element_class_index_.assign(n, static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < n; ++a) {
    if (element_class_index_[a] != static_cast<std::size_t>(-1)) continue;
    std::set<Element> members;
    for (std::size_t x = 0; x < n; ++x) members.insert(g.conjugate(static_cast<Element>(a), static_cast<Element>(x)));
    ElementClass cls{std::vector<Element>(members.begin(), members.end())};
    for (Element m : cls.members) element_class_index_[m] = element_classes_.size();
    element_classes_.push_back(std::move(cls));
  }

  // Subgroups by cyclic extension: every subgroup arises from the trivial one by
  // adjoining elements one at a time.
  struct Found {
    ElementSet set;
    std::vector<Element> gens;
  };
  std::vector<Found> found{{{0}, {}}};
  std::map<ElementSet, std::size_t> found_index{{{0}, 0}};
  for (std::size_t i = 0; i < found.size(); ++i) {
    std::vector<bool> member(n, false);
    for (Element x : found[i].set) member[x] = true;
    std::vector<bool> covered = member;
    for (std::size_t a = 0; a < n; ++a) {
      if (member[a] || covered[a]) continue;
      std::vector<Element> gens = found[i].gens;
      gens.push_back(static_cast<Element>(a));
      ElementSet s = g.closure(gens);
      // Other generators of <a> give the same extension.
      for (Element x : g.closure(std::vector<Element>{static_cast<Element>(a)}))
        if (g.element_order(x) == g.element_order(static_cast<Element>(a))) covered[x] = true;
      if (found_index.count(s)) continue;
      found_index.emplace(s, found.size());
      found.push_back({std::move(s), std::move(gens)});
    }
  }

  std::vector<bool> assigned(found.size(), false);
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (assigned[i]) continue;
    std::set<ElementSet> conjugates;
    for (std::size_t x = 0; x < n; ++x) {
      ElementSet c;
      c.reserve(found[i].set.size());
      for (Element h : found[i].set) c.push_back(g.conjugate(h, static_cast<Element>(x)));
      std::sort(c.begin(), c.end());
      conjugates.insert(std::move(c));
    }
    SubgroupClass cls;
    cls.member_subgroups.assign(conjugates.begin(), conjugates.end());
    cls.representative = cls.member_subgroups.front();
    cls.order = cls.representative.size();
    cls.class_size = cls.member_subgroups.size();
    cls.is_cyclic = std::any_of(cls.representative.begin(), cls.representative.end(),
                                [&](Element x) { return g.element_order(x) == cls.order; });
    cls.generators = found[found_index.at(cls.representative)].gens;
    for (const auto& m : cls.member_subgroups) assigned[found_index.at(m)] = true;
    classes_.push_back(std::move(cls));
  }
  std::sort(classes_.begin(), classes_.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    return a.order != b.order ? a.order < b.order : a.representative < b.representative;
  });
  std::size_t within = 0;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    within = (c > 0 && classes_[c - 1].order == classes_[c].order) ? within + 1 : 1;
    classes_[c].label = "o" + std::to_string(classes_[c].order) + "#" + std::to_string(within);
    for (const auto& m : classes_[c].member_subgroups) class_lookup_.emplace(m, c);
  }
}

std::size_t GroupStructure::class_of(const ElementSet& subgroup) const {
  const auto it = class_lookup_.find(subgroup);
  if (it == class_lookup_.end()) fail(ErrorCategory::validation, "element set is not a subgroup");
  return it->second;
}

std::optional<std::size_t> GroupStructure::find_label(std::string_view label) const {
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (classes_[c].label == label) return c;
  return std::nullopt;
}

StructurePtr analyse(GroupPtr group) { return std::make_shared<const GroupStructure>(std::move(group)); }

std::vector<SubgroupClass> subgroup_classes(const Group& group) {
  GroupStructure s(std::make_shared<const Group>(group));
  return {s.classes().begin(), s.classes().end()};
}

std::vector<ElementSet> all_subgroups_by_subsets(const Group& group) {
  const std::size_t n = group.order();
  if (n > 16) fail(ErrorCategory::resource, "subset enumeration is limited to order 16");
  std::vector<ElementSet> out;
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    ElementSet s{0};
    for (std::size_t i = 1; i < n; ++i)
      if (mask & (1u << (i - 1))) s.push_back(static_cast<Element>(i));
    if (group.is_subgroup(s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- quotients ----------------------------------------------------------

Quotient subquotient_group(const Group& group, const ElementSet& h, const ElementSet& b,
                           std::span<const Element> h_generators) {
  if (!group.is_subgroup(h)) fail(ErrorCategory::validation, "numerator is not a subgroup");
  if (!group.is_subgroup(b)) fail(ErrorCategory::validation, "denominator is not a subgroup");
  if (!std::includes(h.begin(), h.end(), b.begin(), b.end()))
    fail(ErrorCategory::validation, "denominator is not contained in the numerator");
  if (!group.is_normal_in(b, h)) fail(ErrorCategory::validation, "subgroup is not normal");

  Quotient q;
  q.projection.assign(group.order(), Quotient::kNotInDomain);
  for (Element x : h) {
    if (q.projection[x] != Quotient::kNotInDomain) continue;
    const auto coset = static_cast<Element>(q.lift.size());
    for (Element y : b) q.projection[group.mul(x, y)] = coset;
    q.lift.push_back(x);
  }
  const std::size_t m = q.lift.size();
  std::vector<Element> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = q.projection[group.mul(q.lift[i], q.lift[j])];
  std::vector<Element> gens;
  for (Element x : h_generators) {
    if (q.projection[x] == Quotient::kNotInDomain) fail(ErrorCategory::internal, "generator outside the numerator");
    gens.push_back(q.projection[x]);
  }
  q.group = std::make_shared<const Group>(
      Group::trusted(m, std::move(table), dedupe_generators(gens), "quotient of order " + std::to_string(m)));
  return q;
}

Quotient quotient_group(const Group& group, const ElementSet& normal) {
  ElementSet all(group.order());
  std::iota(all.begin(), all.end(), 0u);
  return subquotient_group(group, all, normal, group.generators());
}

std::string to_string(const QuotientType& type) {
  switch (type.kind) {
    case QuotientKind::elementary_abelian_p2: return "ELEM_ABELIAN_P2(" + std::to_string(type.parameter) + ")";
    case QuotientKind::heisenberg: return "HEISENBERG(" + std::to_string(type.parameter) + ")";
    case QuotientKind::dihedral_2n: return "DIHEDRAL_2N(" + std::to_string(type.parameter) + ")";
  }
  return "?";
}

namespace {

std::uint64_t target_order(const QuotientType& type) {
  switch (type.kind) {
    case QuotientKind::elementary_abelian_p2: return type.parameter * type.parameter;
    case QuotientKind::heisenberg: return type.parameter * type.parameter * type.parameter;
    case QuotientKind::dihedral_2n: return type.parameter < 63 ? (std::uint64_t{1} << type.parameter) : 0;
  }
  return 0;
}

std::vector<Element> generating_set(const Group& group, const ElementSet& set) {
  std::vector<Element> gens;
  ElementSet current{0};
  for (Element x : set) {
    if (std::binary_search(current.begin(), current.end(), x)) continue;
    gens.push_back(x);
    current = group.closure(gens);
  }
  return gens;
}

std::optional<QuotientType> detect_quotient_type(const Group& q) {
  const std::size_t n = q.order();
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (!is_prime(p)) continue;
    if (p * p == n && has_quotient_type(q, {QuotientKind::elementary_abelian_p2, p}))
      return QuotientType{QuotientKind::elementary_abelian_p2, p};
    if (p * p * p == n && has_quotient_type(q, {QuotientKind::heisenberg, p}))
      return QuotientType{QuotientKind::heisenberg, p};
  }
  for (std::uint64_t k = kMinDihedralExponent; (std::uint64_t{1} << k) <= n; ++k)
    if (has_quotient_type(q, {QuotientKind::dihedral_2n, k})) return QuotientType{QuotientKind::dihedral_2n, k};
  return std::nullopt;
}

}  // namespace

bool has_quotient_type(const Group& group, const QuotientType& type) {
  const std::uint64_t n = target_order(type);
  if (n == 0 || group.order() != n) return false;
  const auto orders = group.element_orders();
  switch (type.kind) {
    case QuotientKind::elementary_abelian_p2:
      return is_prime(type.parameter) &&
             std::all_of(orders.begin() + 1, orders.end(), [&](std::size_t k) { return k == type.parameter; });
    case QuotientKind::heisenberg:
      return type.parameter % 2 == 1 && is_prime(type.parameter) && !group.is_abelian() &&
             std::all_of(orders.begin() + 1, orders.end(), [&](std::size_t k) { return k == type.parameter; });
    case QuotientKind::dihedral_2n: {
      if (type.parameter < kMinDihedralExponent || group.is_abelian()) return false;
      const std::size_t half = n / 2;
      for (std::size_t c = 0; c < n; ++c) {
        if (orders[c] != half) continue;
        const ElementSet cyc = group.closure(std::vector<Element>{static_cast<Element>(c)});
        bool all_involutions = true;
        for (std::size_t x = 0; x < n && all_involutions; ++x)
          if (!std::binary_search(cyc.begin(), cyc.end(), static_cast<Element>(x)) && orders[x] != 2)
            all_involutions = false;
        return all_involutions;
      }
      return false;
    }
  }
  return false;
}

Subquotient make_subquotient(const GroupStructure& structure, const ElementSet& h, const ElementSet& b) {
  const Group& g = structure.group();
  Subquotient sq;
  sq.h_class = structure.class_of(h);
  sq.h = h;
  sq.b = b;
  sq.quotient = subquotient_group(g, h, b, generating_set(g, h));
  sq.type = detect_quotient_type(*sq.quotient.group);
  sq.quotient_structure = analyse(sq.quotient.group);
  for (const auto& cls : sq.quotient_structure->classes()) {
    ElementSet preimage;
    for (Element x : h) {
      if (std::binary_search(cls.representative.begin(), cls.representative.end(), sq.quotient.projection[x]))
        preimage.push_back(x);
    }
    sq.class_map.push_back(structure.class_of(preimage));
  }
  return sq;
}

Subquotient make_subquotient(const GroupStructure& structure, std::size_t h_class, const ElementSet& b) {
  return make_subquotient(structure, structure.subgroup_class(h_class).representative, b);
}

std::vector<Subquotient> subquotients_of_type(const GroupStructure& structure, const QuotientType& type) {
  if (type.kind == QuotientKind::heisenberg && type.parameter % 2 == 0)
    fail(ErrorCategory::validation, "Heisenberg subquotients require an odd prime");
  const std::uint64_t target = target_order(type);
  const Group& g = structure.group();
  std::vector<Subquotient> out;
  if (target == 0) return out;
  for (std::size_t hc = 0; hc < structure.classes().size(); ++hc) {
    const auto& h = structure.subgroup_class(hc).representative;
    if (h.size() % target != 0) continue;
    for (const auto& bc : structure.classes()) {
      if (bc.order * target != h.size()) continue;
      for (const auto& b : bc.member_subgroups) {
        if (!std::includes(h.begin(), h.end(), b.begin(), b.end()) || !g.is_normal_in(b, h)) continue;
        const Quotient q = subquotient_group(g, h, b, generating_set(g, h));
        if (!has_quotient_type(*q.group, type)) continue;
        out.push_back(make_subquotient(structure, h, b));
      }
    }
  }
  return out;
}

}  // namespace regconst
