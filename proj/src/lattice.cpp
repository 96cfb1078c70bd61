#include "regconst/lattice.hpp"

#include <algorithm>

#include "regconst/error.hpp"

namespace regconst {

GLattice::GLattice(StructurePtr structure, std::vector<IntMatrix> generator_actions, std::string label)
    : structure_(std::move(structure)), generator_actions_(std::move(generator_actions)), label_(std::move(label)) {
  const Group& g = structure_->group();
  if (generator_actions_.size() != g.generators().size())
    fail(ErrorCategory::validation, "lattice needs one action matrix per group generator");
  rank_ = generator_actions_.front().rows();
  for (const auto& m : generator_actions_) {
    if (m.rows() != rank_ || m.cols() != rank_) fail(ErrorCategory::validation, "action matrices must be square of equal size");
    const Integer det = determinant(m);
    if (det != 1 && det != -1) fail(ErrorCategory::validation, "action matrix is not invertible over the integers");
  }
  actions_.assign(g.order(), IntMatrix());
  std::vector<bool> seen(g.order(), false);
  actions_[0] = IntMatrix::identity(rank_);
  seen[0] = true;
  std::vector<Element> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Element x = queue[i];
    for (std::size_t k = 0; k < g.generators().size(); ++k) {
      const Element y = g.mul(x, g.generators()[k]);
      IntMatrix product = actions_[x] * generator_actions_[k];
      if (!seen[y]) {
        seen[y] = true;
        actions_[y] = std::move(product);
        queue.push_back(y);
      } else if (!(actions_[y] == product)) {
        fail(ErrorCategory::validation, "action matrices do not satisfy the group relations");
      }
    }
  }
}

// ---- standard lattices --------------------------------------------------

namespace {

template <typename F>
GLattice build(const StructurePtr& structure, std::string label, F&& action_of) {
  std::vector<IntMatrix> actions;
  for (Element s : structure->group().generators()) actions.push_back(action_of(s));
  return GLattice(structure, std::move(actions), std::move(label));
}

}  // namespace

GLattice trivial_lattice(const StructurePtr& structure) {
  return build(structure, "Z", [](Element) { return IntMatrix::identity(1); });
}

GLattice regular_lattice(const StructurePtr& structure) {
  const std::size_t n = structure->group().order();
  return build(structure, "Reg", [&](Element s) {
    IntMatrix m(n, n);
    for (std::size_t g = 0; g < n; ++g) m(structure->group().mul(s, static_cast<Element>(g)), g) = 1;
    return m;
  });
}

GLattice coset_lattice(const StructurePtr& structure, std::size_t subgroup_class) {
  const Group& g = structure->group();
  const auto& cls = structure->subgroup_class(subgroup_class);
  std::vector<std::size_t> coset_of(g.order(), static_cast<std::size_t>(-1));
  std::vector<Element> lift;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset_of[x] != static_cast<std::size_t>(-1)) continue;
    for (Element h : cls.representative) coset_of[g.mul(static_cast<Element>(x), h)] = lift.size();
    lift.push_back(static_cast<Element>(x));
  }
  const std::size_t k = lift.size();
  return build(structure, "Coset(" + cls.label + ")", [&](Element s) {
    IntMatrix m(k, k);
    for (std::size_t c = 0; c < k; ++c) m(coset_of[g.mul(s, lift[c])], c) = 1;
    return m;
  });
}

GLattice cyclic_quotient_lattice(const StructurePtr& structure) {
  const Group& g = structure->group();
  const std::size_t r = g.order() - 1;
  return build(structure, "A", [&](Element s) {
    IntMatrix m(r, r);
    for (std::size_t x = 1; x < g.order(); ++x) {
      const Element y = g.mul(s, static_cast<Element>(x));
      if (y != 0) {
        m(y - 1, x - 1) = 1;
      } else {
        for (std::size_t i = 0; i < r; ++i) m(i, x - 1) = -1;
      }
    }
    return m;
  });
}

GLattice augmentation_lattice(const StructurePtr& structure) {
  const Group& g = structure->group();
  const std::size_t r = g.order() - 1;
  return build(structure, "I", [&](Element s) {
    // s (x - 1) = (s x - 1) - (s - 1)
    IntMatrix m(r, r);
    for (std::size_t x = 1; x < g.order(); ++x) {
      const Element y = g.mul(s, static_cast<Element>(x));
      if (y != 0) m(y - 1, x - 1) += 1;
      if (s != 0) m(s - 1, x - 1) -= 1;
    }
    return m;
  });
}

GLattice direct_sum(const GLattice& a, const GLattice& b) {
  if (a.group() != b.group()) fail(ErrorCategory::validation, "direct sum of lattices over different groups");
  std::vector<IntMatrix> actions;
  for (std::size_t k = 0; k < a.generator_actions().size(); ++k)
    actions.push_back(block_diagonal(a.generator_actions()[k], b.generator_actions()[k]));
  return GLattice(a.structure_ptr(), std::move(actions), "Sum(" + a.label() + "," + b.label() + ")");
}

GLattice direct_power(const GLattice& a, std::size_t m) {
  std::vector<IntMatrix> actions(a.generator_actions().size(), IntMatrix(0, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < actions.size(); ++k) actions[k] = block_diagonal(actions[k], a.generator_actions()[k]);
  return GLattice(a.structure_ptr(), std::move(actions), a.label() + "^" + std::to_string(m));
}

GLattice change_basis(const GLattice& lattice, const IntMatrix& unimodular) {
  if (unimodular.rows() != lattice.rank() || unimodular.cols() != lattice.rank())
    fail(ErrorCategory::validation, "change of basis has the wrong size");
  const Integer det = determinant(unimodular);
  if (det != 1 && det != -1) fail(ErrorCategory::validation, "change of basis is not unimodular");
  const RatMatrix inv = *inverse(to_rational(unimodular));
  IntMatrix inv_int(inv.rows(), inv.cols());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) inv_int(i, j) = inv(i, j).get_num();
  std::vector<IntMatrix> actions;
  for (const auto& m : lattice.generator_actions()) actions.push_back(inv_int * m * unimodular);
  return GLattice(lattice.structure_ptr(), std::move(actions), lattice.label() + "'");
}

GLattice pullback(const GLattice& lattice, const StructurePtr& target, std::span<const Element> hom) {
  if (hom.size() != target->group().order()) fail(ErrorCategory::validation, "homomorphism has the wrong domain size");
  std::vector<IntMatrix> actions;
  for (Element s : target->group().generators()) {
    if (hom[s] >= lattice.group().order()) fail(ErrorCategory::validation, "homomorphism image out of range");
    actions.push_back(lattice.action(hom[s]));
  }
  return GLattice(target, std::move(actions), lattice.label());
}

GLattice inflate(const GLattice& on_quotient, const StructurePtr& ambient, const Quotient& quotient) {
  if (*quotient.group != on_quotient.group()) fail(ErrorCategory::validation, "lattice is not over the quotient group");
  if (std::find(quotient.projection.begin(), quotient.projection.end(), Quotient::kNotInDomain) != quotient.projection.end())
    fail(ErrorCategory::validation, "inflation needs a quotient of the whole group");
  GLattice out = pullback(on_quotient, ambient, quotient.projection);
  return GLattice(ambient, {out.generator_actions().begin(), out.generator_actions().end()}, "Inf(" + on_quotient.label() + ")");
}

GLattice restrict_to(const GLattice& lattice, const Subquotient& subgroup) {
  if (subgroup.b.size() != 1) fail(ErrorCategory::validation, "restriction needs a subquotient H/1");
  GLattice out = pullback(lattice, subgroup.quotient_structure, subgroup.quotient.lift);
  return GLattice(subgroup.quotient_structure, {out.generator_actions().begin(), out.generator_actions().end()},
                  "Res(" + lattice.label() + ")");
}

// ---- pairings and regulator constants -----------------------------------

Pairing averaged_pairing(const GLattice& lattice) {
  IntMatrix sum(lattice.rank(), lattice.rank());
  for (std::size_t g = 0; g < lattice.group().order(); ++g) {
    const IntMatrix& m = lattice.action(static_cast<Element>(g));
    sum = sum + m.transpose() * m;
  }
  return Pairing{to_rational(sum)};
}

void validate_pairing(const GLattice& lattice, const Pairing& pairing) {
  const auto& p = pairing.matrix;
  if (p.rows() != lattice.rank() || p.cols() != lattice.rank()) fail(ErrorCategory::validation, "pairing has the wrong size");
  if (!(p == p.transpose())) fail(ErrorCategory::validation, "pairing is not symmetric");
  if (determinant(p) == 0) fail(ErrorCategory::validation, "pairing is degenerate");
  for (const auto& m : lattice.generator_actions()) {
    const RatMatrix r = to_rational(m);
    if (!(r.transpose() * p * r == p)) fail(ErrorCategory::validation, "pairing is not G-invariant");
  }
}

IntMatrix fixed_sublattice(const GLattice& lattice, std::size_t subgroup_class) {
  const auto& cls = lattice.structure().subgroup_class(subgroup_class);
  const std::size_t r = lattice.rank();
  IntMatrix stacked(cls.generators.size() * r, r);
  for (std::size_t k = 0; k < cls.generators.size(); ++k) {
    const IntMatrix& m = lattice.action(cls.generators[k]);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) stacked(k * r + i, j) = m(i, j) - (i == j ? 1 : 0);
  }
  return integer_kernel(stacked).transpose();
}

Rational restricted_determinant(const GLattice& lattice, std::size_t subgroup_class, const Pairing& pairing) {
  const IntMatrix basis = fixed_sublattice(lattice, subgroup_class);
  const RatMatrix b = to_rational(basis);
  const RatMatrix gram = b.transpose() * (pairing.matrix * b);
  const auto order = static_cast<long>(lattice.structure().subgroup_class(subgroup_class).order);
  return determinant(gram) / power(Rational(order), static_cast<std::int64_t>(basis.cols()));
}

namespace {

void check_same_group(const GLattice& lattice, const GRelation& relation) {
  if (lattice.group() != relation.structure().group())
    fail(ErrorCategory::validation, "relation and lattice belong to different groups");
}

}  // namespace

RegulatorValue regulator_constant(const GLattice& lattice, const GRelation& relation, const std::optional<Pairing>& pairing) {
  check_same_group(lattice, relation);
  Pairing form;
  if (pairing) {
    validate_pairing(lattice, *pairing);
    form = *pairing;
  } else {
    form = averaged_pairing(lattice);
  }
  Rational value = 1;
  for (const auto& [cls, n] : relation.support()) {
    const Rational det = restricted_determinant(lattice, cls, form);
    if (det == 0) fail(ErrorCategory::internal, "pairing degenerates on a fixed sublattice");
    value *= power(det, n);
  }
  return RegulatorValue::from(value);
}

Rational trivial_lattice_constant(const GRelation& relation) { return 1 / subgroup_order_product(relation); }

Rational subgroup_order_product(const GRelation& relation) {
  Rational value = 1;
  for (const auto& [cls, n] : relation.support())
    value *= power(Rational(static_cast<long>(relation.structure().subgroup_class(cls).order)), n);
  return value;
}

IndexRatioCheck index_ratio_check(const GLattice& m, const GLattice& n, const IntMatrix& embed, const GRelation& relation) {
  check_same_group(m, relation);
  check_same_group(n, relation);
  if (m.rank() != n.rank()) fail(ErrorCategory::validation, "index check needs lattices of equal rank");
  if (embed.rows() != n.rank() || embed.cols() != m.rank()) fail(ErrorCategory::validation, "embedding has the wrong shape");
  for (std::size_t k = 0; k < m.generator_actions().size(); ++k)
    if (!(n.generator_actions()[k] * embed == embed * m.generator_actions()[k]))
      fail(ErrorCategory::validation, "embedding is not G-equivariant");
  if (determinant(embed) == 0) fail(ErrorCategory::validation, "embedding is not injective");

  IndexRatioCheck out;
  out.indices.assign(relation.coeffs().size(), 0);
  out.index_product = 1;
  for (const auto& [cls, coeff] : relation.support()) {
    const RatMatrix bn = to_rational(fixed_sublattice(n, cls));
    const RatMatrix image = to_rational(embed * fixed_sublattice(m, cls));
    const auto x = solve(bn, image);
    if (!x) fail(ErrorCategory::internal, "image of a fixed sublattice escapes the target fixed sublattice");
    const Rational det = determinant(*x);
    if (det.get_den() != 1) fail(ErrorCategory::internal, "non-integral change of basis between fixed sublattices");
    out.indices[cls] = abs(det.get_num());
    out.index_product *= power(Rational(out.indices[cls]), 2 * coeff);
  }
  out.constant_ratio = regulator_constant(m, relation).value / regulator_constant(n, relation).value;
  out.holds = out.constant_ratio == out.index_product;
  return out;
}

GLattice tower_target_lattice(const StructurePtr& structure, std::size_t m) {
  GLattice sum = direct_sum(direct_sum(cyclic_quotient_lattice(structure), augmentation_lattice(structure)),
                            trivial_lattice(structure));
  if (m > 0) sum = direct_sum(sum, direct_power(regular_lattice(structure), m));
  return sum;
}

RegulatorValue tower_target_constant(const StructurePtr& structure, std::size_t m, const GRelation& relation) {
  const RegulatorValue value = regulator_constant(tower_target_lattice(structure, m), relation);
  if (value.value != trivial_lattice_constant(relation))
    fail(ErrorCategory::internal, "tower lattice constant " + to_string(value.value) + " differs from the trivial lattice constant");
  return value;
}

}  // namespace regconst
