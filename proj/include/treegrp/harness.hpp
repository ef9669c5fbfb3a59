#pragma once

// End-to-end checks of the classification of maximal-dimension pattern
// groups, the parity obstruction for [P_J, P_J] and the auxiliary facts they
// rest on. Each routine returns a report; statements that fail on concrete
// data raise TheoremViolation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treegrp/errors.hpp"
#include "treegrp/parity.hpp"
#include "treegrp/portrait.hpp"
#include "treegrp/rational.hpp"

namespace treegrp {

struct ClassifyOptions {
  /// Use the GF(2) route; required for d = 5.
  bool gf2 = false;
  std::size_t cap = kDefaultEnumerationCap;
};

struct ClassificationRow {
  int d = 0;
  LevelSet J;
  // Properties of P_J itself.
  bool essential = false;
  bool contains_a_dminus1 = false;
  bool contains_derived_of_Gd = false;
  int log2_order = 0;
  // The essential reduction R of P_J and the three conditions of the
  // classification evaluated on R.
  int reduced_log2_order = 0;
  int reduced_stabilizer_log2_order = 0;  // log2 |R_{d-1}|
  Rational dimension;
  bool is_max_dimension = false;
  bool reduced_is_maximal = false;
  bool reduced_contains_a_dminus1 = false;
  bool reduced_proper_above_derived = false;
  /// R_{d-1} not inside [R, R]; empty when not evaluated.
  std::optional<bool> bs_premise_fails;
  std::string bs_method;
  std::string top_fg_verdict = "unknown";
};

struct ClassificationReport {
  int d = 0;
  std::string method;  // "enumeration" or "gf2"
  std::vector<ClassificationRow> rows;
  std::size_t max_dimension_count = 0;
  Rational max_dimension;
};

/// One row per nonempty J. Throws TheoremViolation when a row breaks the
/// classification or the max-dimension count differs from 2^{d-1}.
ClassificationReport classify_maximal(int d, const ClassifyOptions& opts = {});

struct NoAdadCase {
  LevelSet J;
  Certificate certificate;
  bool brute_force_run = false;
  bool in_derived = false;
  bool in_stabilizer = false;
  std::size_t derived_order = 0;
};

struct NoAdadReport {
  int d = 0;
  std::vector<NoAdadCase> cases;
};

/// [a_0, a_{d-1}] against [P_J, P_J] for every J containing d-1: the parity
/// certificate for d <= 8, plus enumeration of [P_J, P_J] for d <= 4.
NoAdadReport verify_no_adad(int d, std::size_t cap = kDefaultEnumerationCap);

struct TopFgCase {
  LevelSet J;
  bool in_stabilizer = false;
  Certificate certificate;
  std::string verdict;
};

struct TopFgReport {
  int d = 0;
  std::string method;
  std::vector<TopFgCase> cases;
};

/// For every maximal-dimension P_J: [a_0, a_{d-1}] lies in the level-(d-1)
/// stabilizer and outside [P, P], so the Bondarenko-Samoilovych condition
/// gives "not topologically finitely generated". That condition is imported.
TopFgReport verify_not_top_fg(int d, std::size_t cap = kDefaultEnumerationCap);

struct RelationCase {
  std::string label;  // "P_{...}" or "G(d)"
  bool maximal = false;
  std::size_t order = 0;
  std::size_t stabilizer_order = 0;
  bool stabilized = false;
  std::size_t psi_index = 0;
  std::vector<std::size_t> index_by_depth;
  int linear_log2_index = -1;
  bool holds = false;
};

struct RelationReport {
  int d = 0;
  std::vector<RelationCase> cases;
  bool complete = true;
};

/// 2|P| = |P_{d-1}|^2 [H x H : psi(Stab_{H(n+1)}(1))] for every J containing
/// d-1 and for G(d); the index is 2 for maximal P. d <= 3.
RelationReport verify_new_relation(int d, std::size_t cap = kDefaultEnumerationCap);

struct AuxCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

struct AuxReport {
  int d = 0;
  std::vector<AuxCheck> checks;
  bool ok() const;
};

/// Conjugation of last-level labels, the finite / level-transitive /
/// positive-dimension equivalence and the allowed dimension values, over the
/// subgroups of G(2) (d = 2) and all essential reductions of P_J.
AuxReport verify_auxiliary(int d, std::size_t samples = 10000, std::uint64_t seed = 1,
                           std::size_t cap = kDefaultEnumerationCap);

/// Every nonempty J inside [0, d-1], in increasing mask order; with
/// top_only, just those containing d-1.
std::vector<LevelSet> level_sets(int d, bool top_only);

}  // namespace treegrp
