#pragma once

// Pattern groups: subgroups P of G(d) used as the allowed size-d patterns of
// a finitely constrained group G_P.

#include <cstddef>
#include <optional>
#include <vector>

#include "treegrp/errors.hpp"
#include "treegrp/portrait.hpp"
#include "treegrp/rational.hpp"
#include "treegrp/subgroup.hpp"

namespace treegrp {

enum class Essentiality { Yes, No, Unknown };

class PatternGroup {
 public:
  explicit PatternGroup(EnumeratedSubgroup group, Essentiality essential = Essentiality::Unknown)
      : group_(std::move(group)), essential_(essential) {}

  int depth() const { return group_.depth(); }
  const EnumeratedSubgroup& group() const { return group_; }
  Essentiality essential() const { return essential_; }

 private:
  EnumeratedSubgroup group_;
  Essentiality essential_;
};

struct EssentialityReport {
  bool essential = true;
  /// A g in P whose section at `child`, cut to d-1 levels, is not the
  /// truncation of any element of P.
  std::optional<FiniteAutomorphism> witness;
  int child = -1;
};

EssentialityReport is_essential(const EnumeratedSubgroup& p);

/// Successive groups P = R_0 > R_1 > ... > R_k of the reduction, where R_{i+1}
/// keeps the elements of R_i whose two child sections extend within R_i.
/// R_k is the fixpoint.
std::vector<EnumeratedSubgroup> reduction_chain(const EnumeratedSubgroup& p);
PatternGroup essential_reduction(const EnumeratedSubgroup& p);

/// log2 |P_{d-1}| / 2^{d-1}. Throws std::invalid_argument for non-essential P.
Rational hausdorff_dimension(const PatternGroup& p);

/// Dimension lies in {0, 1/2^{d-1}, ..., 1}, dimension 0 forces a finite G_P
/// and dimension 1 forces P = G(d).
bool dimension_in_allowed_set(const PatternGroup& p);

/// |P_{d-1}| = 1.
bool is_finite(const PatternGroup& p);
/// Transitivity of G_P on every level; equal to !is_finite(p). Throws
/// TheoremViolation if the truncation groups up to depth d+2 (as far as the
/// cap allows) contradict it.
bool is_level_transitive(const PatternGroup& p, std::size_t cap = kDefaultEnumerationCap);

/// { g in G(n) : every size-d pattern of g at a vertex of level <= n-d is in P },
/// for any subgroup P and d <= n <= 6.
EnumeratedSubgroup constrained_group(const EnumeratedSubgroup& p, int n, std::size_t cap = kDefaultEnumerationCap);

struct TruncationGroup {
  int pattern_depth = 0;
  int depth = 0;
  EnumeratedSubgroup group;
};

/// Depth-n truncation of G_P for essential P (n >= d).
TruncationGroup truncation_group(const PatternGroup& p, int n, std::size_t cap = kDefaultEnumerationCap);

/// The depth-n truncation H(n) of G_P for every n >= 1: the truncation image of
/// P below depth d, P at depth d, constrained groups beyond. P must be essential.
EnumeratedSubgroup level_group(const PatternGroup& p, int n, std::size_t cap = kDefaultEnumerationCap);

struct LevelEvidence {
  int level = 0;
  bool computed = false;
  bool transitive = false;
  std::size_t order = 0;
};

struct TransitivityEvidence {
  std::vector<LevelEvidence> levels;
  /// First computed level where H(n) is not transitive on level n.
  std::optional<int> first_nontransitive;
  /// |H(d+1)| > |H(d)|, counted without materializing H(d+1).
  std::optional<bool> order_grows;
};

TransitivityEvidence transitivity_evidence(const PatternGroup& p, int max_level,
                                           std::size_t cap = kDefaultEnumerationCap);

struct PsiIndexStep {
  int n = 0;
  std::size_t h_order = 0;
  std::size_t stabilizer_order = 0;
  std::size_t image_order = 0;
  std::size_t index = 0;
};

struct PsiIndexResult {
  bool stabilized = false;
  std::size_t index = 0;
  std::vector<PsiIndexStep> steps;
};

/// [H(n) x H(n) : psi(Stab_{H(n+1)}(1))] for n = d-1, d, ... until two
/// consecutive depths agree or the depth/cap budget runs out.
PsiIndexResult psi_image_index(const PatternGroup& p, std::size_t cap = kDefaultEnumerationCap);

}  // namespace treegrp
