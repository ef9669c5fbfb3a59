#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treegrp/errors.hpp"
#include "treegrp/packed.hpp"
#include "treegrp/portrait.hpp"
#include "treegrp/predicate.hpp"

namespace treegrp {

/// An explicitly enumerated subgroup of G(d), d <= 6. Elements are kept as
/// sorted packed keys, so equality of subgroups is equality of element lists.
class EnumeratedSubgroup {
 public:
  using Key = packed::Key;

  /// Takes sorted, duplicate-free keys. No closure check is made here.
  EnumeratedSubgroup(int depth, std::vector<Key> sorted_elements, std::vector<Key> generators,
                     bool generators_known);

  static EnumeratedSubgroup trivial(int depth);

  int depth() const { return depth_; }
  std::size_t order() const { return elements_.size(); }
  /// log2 of the order; the order of a subgroup of G(d) is a power of 2.
  int log2_order() const;

  bool contains(const FiniteAutomorphism& g) const;
  bool contains_key(Key k) const;

  std::span<const Key> elements() const { return elements_; }
  FiniteAutomorphism element(std::size_t i) const { return packed::to_automorphism(elements_[i], depth_); }

  /// False for subgroups obtained by filtering, where no generating set was
  /// recorded; see generating_set().
  bool generators_known() const { return generators_known_; }
  std::span<const Key> generator_keys() const { return generators_; }
  std::vector<FiniteAutomorphism> generators() const;

  bool is_subset_of(const EnumeratedSubgroup& other) const;
  /// True iff closed under products and inverses and contains the identity.
  bool verify_closed() const;

  friend bool operator==(const EnumeratedSubgroup& a, const EnumeratedSubgroup& b) {
    return a.depth_ == b.depth_ && a.elements_ == b.elements_;
  }

 private:
  int depth_;
  std::vector<Key> elements_;
  std::vector<Key> generators_;
  bool generators_known_;
};

/// The least subgroup containing the generators (breadth-first closure).
EnumeratedSubgroup close(int depth, std::span<const FiniteAutomorphism> generators,
                         std::size_t cap = kDefaultEnumerationCap);
EnumeratedSubgroup close_keys(int depth, std::span<const packed::Key> generators,
                              std::size_t cap = kDefaultEnumerationCap);
/// G(d) itself, generated by a_0..a_{d-1}.
EnumeratedSubgroup full_group(int depth, std::size_t cap = kDefaultEnumerationCap);

/// [S : T]; throws std::invalid_argument unless T is a subgroup of S.
std::size_t index(const EnumeratedSubgroup& s, const EnumeratedSubgroup& t);

/// Elements of s with trivial labels on levels 0..n-1.
EnumeratedSubgroup level_stabilizer(const EnumeratedSubgroup& s, int n);
/// Image of s under truncation to the first k levels.
EnumeratedSubgroup truncate_image(const EnumeratedSubgroup& s, int k);

/// A generating set chosen greedily in key order; at most log2|s| elements.
std::vector<packed::Key> generating_set(const EnumeratedSubgroup& s, std::size_t cap = kDefaultEnumerationCap);
/// s with a recorded generating set.
EnumeratedSubgroup with_generators(const EnumeratedSubgroup& s, std::size_t cap = kDefaultEnumerationCap);

/// [S, S] as the normal closure of the commutators of a generating set.
EnumeratedSubgroup derived_subgroup(const EnumeratedSubgroup& s, std::size_t cap = kDefaultEnumerationCap);

std::vector<Vertex> orbit(const EnumeratedSubgroup& s, const Vertex& v);
bool is_transitive_on_level(const EnumeratedSubgroup& s, int n);

/// P_J enumerated by filtering G(d) with the alpha_J predicate.
EnumeratedSubgroup enumerate_PJ(int depth, LevelSet levels, std::size_t cap = kDefaultEnumerationCap);
/// Any predicate subgroup, enumerated by filtering G(d).
EnumeratedSubgroup enumerate_predicate(const PredicateSubgroup& p, std::size_t cap = kDefaultEnumerationCap);

/// Every subgroup of G(d) for d <= 2, in increasing (order, elements) order.
std::vector<EnumeratedSubgroup> all_subgroups(int depth, std::size_t cap = kDefaultEnumerationCap);

/// For h in G_{d-1}(d): whether h^g stabilizes level d-1 and carries the label
/// of h at g(v) on every level-(d-1) vertex v. Always true.
bool conjugate_label_check(const FiniteAutomorphism& h, const FiniteAutomorphism& g);

/// Membership in [G(d), G(d)]: every level parity vanishes.
bool in_derived_of_Gd(const FiniteAutomorphism& g);

struct PresentationReport {
  int depth = 0;
  std::size_t involution_checks = 0;
  std::size_t involution_failures = 0;
  std::size_t commutation_checks = 0;
  std::size_t commutation_failures = 0;
  bool order_checked = false;
  std::size_t order = 0;
  std::size_t expected_order = 0;
  bool ok() const {
    return involution_failures == 0 && commutation_failures == 0 && (!order_checked || order == expected_order);
  }
};

/// Checks a_i^2 = 1 and [a_j^{a_i}, a_k] = 1 for i < j, k; the order of
/// <a_0..a_{d-1}> is compared with 2^{2^d-1} when it fits the cap.
PresentationReport verify_presentation(int depth, std::size_t cap = kDefaultEnumerationCap);

}  // namespace treegrp
