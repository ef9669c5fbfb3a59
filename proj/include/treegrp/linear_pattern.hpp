#pragma once

// GF(2) fast path for pattern groups whose allowed portraits form a linear
// subspace of the portrait space (P_J, M_V, intersections of level-parity
// kernels). Orders, truncations, essentiality, dimension, transitivity and
// the psi-image index all reduce to ranks of parity-constraint matrices, so
// depths beyond enumeration reach are covered. Results are cross-validated
// against the enumerated route at d <= 4 in the tests.

#include <vector>

#include "treegrp/gf2.hpp"
#include "treegrp/portrait.hpp"
#include "treegrp/predicate.hpp"
#include "treegrp/rational.hpp"

namespace treegrp {

class LinearPatternGroup {
 public:
  /// The common kernel of the functionals (each of width 2^d - 1).
  LinearPatternGroup(int depth, std::vector<gf2::BitVector> constraints);
  static LinearPatternGroup from_predicate(const PredicateSubgroup& p);
  static LinearPatternGroup full(int depth);

  int depth() const { return depth_; }
  const std::vector<gf2::BitVector>& constraints() const { return constraints_; }
  bool contains(const FiniteAutomorphism& g) const;

  int log2_order() const;
  /// log2 |P_n|.
  int stabilizer_log2_order(int n) const;
  /// Basis of the subspace of allowed portraits.
  std::vector<gf2::BitVector> basis() const;
  /// Image under truncation to the first k levels.
  LinearPatternGroup truncate_image(int k) const;

  bool is_essential() const;
  /// One step of the reduction: keep the patterns whose child sections both
  /// extend within the group.
  LinearPatternGroup reduction_step() const;
  LinearPatternGroup essential_reduction() const;
  /// log2 |P_{d-1}| / 2^{d-1}; throws std::invalid_argument unless essential.
  Rational hausdorff_dimension() const;
  /// Whether every constraint is a sum of level parities.
  bool contains_derived_of_Gd() const;

  /// Constraints cutting out the depth-n truncation of G_P inside G(n):
  /// for n >= d, every size-d pattern at a vertex of level <= n-d is allowed;
  /// for n < d, the truncation image of P.
  std::vector<gf2::BitVector> level_group_constraints(int n) const;
  int truncation_log2_order(int n) const;
  /// Whether the depth-n truncation group acts transitively on level n.
  bool truncation_transitive(int n) const;
  /// log2 of [H(n) x H(n) : psi(Stab_{H(n+1)}(1))], n >= d - 1.
  int psi_log2_index(int n) const;

 private:
  int depth_;
  std::vector<gf2::BitVector> constraints_;
};

}  // namespace treegrp
