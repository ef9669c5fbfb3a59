#pragma once

// Half-tree parities N_0, N_1 relative to a level set J and the
// non-membership certificate for [P_J, P_J] built on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "treegrp/portrait.hpp"

namespace treegrp {

/// J together with J' = J \ {0} and I_0 = [0 in J].
class JContext {
 public:
  /// Any nonempty J inside [0, d-1].
  JContext(int depth, LevelSet levels);
  /// Additionally requires d >= 2 and d-1 in J, so J' is nonempty.
  static JContext for_theorem(int depth, LevelSet levels);

  int depth() const { return depth_; }
  LevelSet J() const { return levels_; }
  LevelSet Jprime() const { return levels_.without(0); }
  Parity I0() const { return Parity(levels_.contains(0)); }
  bool theorem_ready() const { return depth_ >= 2 && levels_.contains(depth_ - 1); }
  /// Throws std::invalid_argument unless theorem_ready().
  void require_top_level() const;

 private:
  int depth_;
  LevelSet levels_;
};

/// N_i(g): XOR of the labels at the vertices i v' whose length lies in J'.
Parity N(const FiniteAutomorphism& g, const JContext& ctx, int i);

struct HalfParities {
  Parity n0;
  Parity n1;
  Parity operator[](int i) const { return i ? n1 : n0; }
  friend bool operator==(const HalfParities&, const HalfParities&) = default;
};

HalfParities half_parities(const FiniteAutomorphism& g, const JContext& ctx);

enum class NiIdentity { Product, Inverse, Commutator };
const char* identity_name(NiIdentity id);

struct NiCounterexample {
  NiIdentity identity = NiIdentity::Product;
  int i = 0;
  std::string g_hex;
  std::string h_hex;
};

struct NiReport {
  int depth = 0;
  LevelSet levels;
  std::size_t pairs = 0;
  std::size_t failures = 0;
  std::optional<NiCounterexample> first;
  bool ok() const { return failures == 0; }
};

/// The three identities, for both i, on `samples` seeded Haar-random pairs.
NiReport verify_ni_identities(const JContext& ctx, std::size_t samples, std::uint64_t seed);
/// The same over all of G(d) x G(d); d <= 3.
NiReport verify_ni_identities_exhaustive(const JContext& ctx);

/// Whether g satisfies alpha_J(g) = 0.
bool in_PJ(const FiniteAutomorphism& g, const JContext& ctx);

/// (N_0, N_1) of [g,h] for g, h in P_J, evaluated on the portrait and through
/// the commutator identity. Throws std::invalid_argument when g or h is not
/// in P_J, TheoremViolation when the two routes disagree or the value is
/// nonzero.
HalfParities commutator_parity(const FiniteAutomorphism& g, const FiniteAutomorphism& h, const JContext& ctx);

enum class Verdict { NotInDerived, Inconclusive };
const char* verdict_name(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  /// 0 for N0, 1 for N1; empty when inconclusive.
  std::optional<int> functional;
  std::string functional_name() const;
};

/// One-sided test for x in [P_J, P_J]: a nonzero N_i proves non-membership.
/// Throws std::invalid_argument when x is not in P_J.
Certificate derived_membership_certificate(const JContext& ctx, const FiniteAutomorphism& x);

/// (N_0, N_1) of the product a_{w_1} ... a_{w_k}, read off the word: an
/// occurrence of a J'-letter counts towards N_1 when the suffix after it has
/// root activity 1 and towards N_0 otherwise.
HalfParities word_parities(std::span<const int> word, const JContext& ctx);

}  // namespace treegrp
