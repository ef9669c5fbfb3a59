#pragma once

#include <string>
#include <vector>

#include "treegrp/gf2.hpp"
#include "treegrp/portrait.hpp"

namespace treegrp {

/// A subgroup of G(d) described as the common kernel of parity functionals
/// on portrait bits. Membership needs no enumeration; order comes from a
/// GF(2) rank.
class PredicateSubgroup {
 public:
  enum class Kind { PJ, MV, DerivedOfGd, LevelStabilizer, Intersection };

  /// P_J = ker alpha_J, a maximal subgroup of G(d). J must be nonempty.
  static PredicateSubgroup maximal(int depth, LevelSet levels);
  /// M_V: elements of G_{d-1}(d) whose labels over V sum to 0. V nonempty, on level d-1.
  static PredicateSubgroup m_v(int depth, std::vector<Vertex> vertices);
  static PredicateSubgroup derived_of_full(int depth);
  static PredicateSubgroup level_stabilizer(int depth, int n);
  static PredicateSubgroup intersection(const PredicateSubgroup& a, const PredicateSubgroup& b);

  Kind kind() const { return kind_; }
  int depth() const { return depth_; }
  LevelSet levels() const { return levels_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  int stabilized_level() const { return level_; }

  bool contains(const FiniteAutomorphism& g) const;
  /// Functionals over the 2^d - 1 portrait bits whose common kernel is the subgroup.
  const std::vector<gf2::BitVector>& constraints() const { return constraints_; }
  /// log2 of the order, via GF(2) rank.
  int log2_order() const;
  std::string describe() const;

 private:
  PredicateSubgroup(Kind kind, int depth) : kind_(kind), depth_(depth) {}

  Kind kind_;
  int depth_;
  LevelSet levels_;
  std::vector<Vertex> vertices_;
  int level_ = 0;
  std::vector<gf2::BitVector> constraints_;
};

/// beta_V: XOR of the labels of g over V.
Parity beta_V(const FiniteAutomorphism& g, const std::vector<Vertex>& vertices);

/// Functional selecting the labels on the levels in J.
gf2::BitVector level_functional(int depth, LevelSet levels);

}  // namespace treegrp
