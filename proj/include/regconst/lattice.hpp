#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regconst/group.hpp"
#include "regconst/matrix.hpp"
#include "regconst/rational.hpp"
#include "regconst/relations.hpp"

namespace regconst {

/// Integral representation of a finite group: one integer matrix per group
/// generator, acting on column vectors. The constructor checks that the
/// generator matrices extend to a homomorphism and materializes rho(g) for
/// every element.
class GLattice {
 public:
  GLattice(StructurePtr structure, std::vector<IntMatrix> generator_actions, std::string label);

  const GroupStructure& structure() const { return *structure_; }
  const StructurePtr& structure_ptr() const { return structure_; }
  const Group& group() const { return structure_->group(); }
  std::size_t rank() const noexcept { return rank_; }
  const std::string& label() const noexcept { return label_; }

  std::span<const IntMatrix> generator_actions() const noexcept { return generator_actions_; }
  /// rho(g) for an arbitrary element.
  const IntMatrix& action(Element g) const { return actions_.at(g); }

 private:
  StructurePtr structure_;
  std::size_t rank_ = 0;
  std::vector<IntMatrix> generator_actions_;
  std::vector<IntMatrix> actions_;
  std::string label_;
};

/// Symmetric, nondegenerate, G-invariant bilinear form on a lattice.
struct Pairing {
  RatMatrix matrix;
};

// ---- standard lattices --------------------------------------------------

GLattice trivial_lattice(const StructurePtr& structure);
GLattice regular_lattice(const StructurePtr& structure);
/// Z[G/H] on the left cosets of the class representative, ordered by least element.
GLattice coset_lattice(const StructurePtr& structure, std::size_t subgroup_class);
/// Z[G]/(sum of all g), basis the images of g != 1.
GLattice cyclic_quotient_lattice(const StructurePtr& structure);
/// Augmentation ideal, basis g - 1 for g != 1.
GLattice augmentation_lattice(const StructurePtr& structure);
GLattice direct_sum(const GLattice& a, const GLattice& b);
/// m-fold direct sum; m = 0 gives the zero lattice.
GLattice direct_power(const GLattice& a, std::size_t m);
/// Lattice with rho'(g) = U^-1 rho(g) U for a unimodular U.
GLattice change_basis(const GLattice& lattice, const IntMatrix& unimodular);

/// Pullback along a homomorphism `hom` from the target group to the lattice's
/// group (hom[g] is the image of target element g). Covers inflation from a
/// quotient (hom = projection) and restriction to a subgroup (hom = inclusion).
GLattice pullback(const GLattice& lattice, const StructurePtr& target, std::span<const Element> hom);
GLattice inflate(const GLattice& on_quotient, const StructurePtr& ambient, const Quotient& quotient);
/// Res to H for a subquotient H/1.
GLattice restrict_to(const GLattice& lattice, const Subquotient& subgroup);

// ---- pairings and regulator constants -----------------------------------

/// Sum over g of rho(g)^T rho(g).
Pairing averaged_pairing(const GLattice& lattice);
/// Throws a validation error unless the pairing is symmetric, nondegenerate and invariant.
void validate_pairing(const GLattice& lattice, const Pairing& pairing);

/// Columns form a basis of L^H in Hermite normal form (rank x dim L^H).
IntMatrix fixed_sublattice(const GLattice& lattice, std::size_t subgroup_class);

/// det((1/|H|) <,>|L^H) for one subgroup class.
Rational restricted_determinant(const GLattice& lattice, std::size_t subgroup_class, const Pairing& pairing);

RegulatorValue regulator_constant(const GLattice& lattice, const GRelation& relation,
                                  const std::optional<Pairing>& pairing = std::nullopt);

/// prod |H|^{-n_H}, the regulator constant of the trivial lattice.
Rational trivial_lattice_constant(const GRelation& relation);
/// prod |H|^{n_H}
Rational subgroup_order_product(const GRelation& relation);

struct IndexRatioCheck {
  bool holds = false;
  std::vector<Integer> indices;  // [N^H : i(M^H)] per class; 0 where n_H = 0 and not computed
  Rational constant_ratio;       // C(M) / C(N)
  Rational index_product;        // prod index^{2 n_H}
};

/// Compares C(M)/C(N) with prod [N^H : i(M^H)]^{2 n_H} for an injective
/// equivariant embed: M -> N given as a rank(N) x rank(M) integer matrix.
IndexRatioCheck index_ratio_check(const GLattice& m, const GLattice& n, const IntMatrix& embed,
                                  const GRelation& relation);

/// Regulator constant of A + I + Z + Z[G]^m; checked against prod |H|^{-n_H}.
RegulatorValue tower_target_constant(const StructurePtr& structure, std::size_t m, const GRelation& relation);
GLattice tower_target_lattice(const StructurePtr& structure, std::size_t m);

}  // namespace regconst
