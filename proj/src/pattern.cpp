#include "treegrp/pattern.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "treegrp/kernels.hpp"

namespace treegrp {

using packed::Key;

namespace {

std::vector<Key> top_patterns(const EnumeratedSubgroup& p) {
  std::vector<Key> tops;
  tops.reserve(p.order());
  for (Key g : p.elements()) tops.push_back(packed::truncate(g, p.depth() - 1));
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
  return tops;
}

Key child_pattern(Key g, int depth, int child) {
  return packed::subpattern(g, 1, static_cast<std::uint32_t>(child), depth - 1);
}

void require_essential(const PatternGroup& p, const char* op) {
  const bool ok = p.essential() == Essentiality::Yes ||
                  (p.essential() == Essentiality::Unknown && is_essential(p.group()).essential);
  if (!ok) {
    throw std::invalid_argument(std::string(op) + " needs an essential pattern group; reduce it first");
  }
}

}  // namespace

EssentialityReport is_essential(const EnumeratedSubgroup& p) {
  EssentialityReport r;
  const int d = p.depth();
  if (d < 2) return r;
  const auto tops = top_patterns(p);
  for (Key g : p.elements()) {
    for (int i = 0; i < 2; ++i) {
      if (!std::binary_search(tops.begin(), tops.end(), child_pattern(g, d, i))) {
        r.essential = false;
        r.witness = packed::to_automorphism(g, d);
        r.child = i;
        return r;
      }
    }
  }
  return r;
}

std::vector<EnumeratedSubgroup> reduction_chain(const EnumeratedSubgroup& p) {
  std::vector<EnumeratedSubgroup> chain{p};
  const int d = p.depth();
  if (d < 2) return chain;
  for (;;) {
    const auto& cur = chain.back();
    const auto tops = top_patterns(cur);
    std::vector<Key> kept;
    for (Key g : cur.elements()) {
      if (std::binary_search(tops.begin(), tops.end(), child_pattern(g, d, 0)) &&
          std::binary_search(tops.begin(), tops.end(), child_pattern(g, d, 1))) {
        kept.push_back(g);
      }
    }
    if (kept.size() == cur.order()) break;
    chain.emplace_back(d, std::move(kept), std::vector<Key>{}, false);
  }
  return chain;
}

PatternGroup essential_reduction(const EnumeratedSubgroup& p) {
  auto chain = reduction_chain(p);
  return PatternGroup(std::move(chain.back()), Essentiality::Yes);
}

Rational hausdorff_dimension(const PatternGroup& p) {
  require_essential(p, "hausdorff_dimension");
  const int d = p.depth();
  const auto stab = level_stabilizer(p.group(), d - 1);
  if (!std::has_single_bit(stab.order())) {
    throw std::logic_error("level stabilizer order " + std::to_string(stab.order()) + " is not a power of 2");
  }
  return Rational(stab.log2_order(), std::int64_t{1} << (d - 1));
}

bool is_finite(const PatternGroup& p) {
  require_essential(p, "is_finite");
  return level_stabilizer(p.group(), p.depth() - 1).order() == 1;
}

EnumeratedSubgroup constrained_group(const EnumeratedSubgroup& p, int n, std::size_t cap) {
  const int d = p.depth();
  if (n < d) throw std::invalid_argument("constrained_group: depth below the pattern size");
  if (n > packed::kMaxPackedDepth) {
    throw ResourceError("truncation groups are enumerated up to depth 6, requested " + std::to_string(n));
  }
  if (n == d) return p;
  const kernels::ExtensionTable table(p.elements(), d);
  std::vector<Key> cur(p.elements().begin(), p.elements().end());
  for (int m = d + 1; m <= n; ++m) cur = kernels::extend_parallel(cur, table, m, cap);
  return EnumeratedSubgroup(n, std::move(cur), {}, false);
}

TruncationGroup truncation_group(const PatternGroup& p, int n, std::size_t cap) {
  require_essential(p, "truncation_group");
  if (n < p.depth()) throw std::invalid_argument("truncation_group needs n >= d");
  return TruncationGroup{p.depth(), n, constrained_group(p.group(), n, cap)};
}

EnumeratedSubgroup level_group(const PatternGroup& p, int n, std::size_t cap) {
  require_essential(p, "level_group");
  if (n < 1) throw std::invalid_argument("level_group needs n >= 1");
  if (n < p.depth()) return truncate_image(p.group(), n);
  return constrained_group(p.group(), n, cap);
}

TransitivityEvidence transitivity_evidence(const PatternGroup& p, int max_level, std::size_t cap) {
  require_essential(p, "transitivity_evidence");
  const int d = p.depth();
  TransitivityEvidence ev;
  std::optional<EnumeratedSubgroup> prev;
  for (int n = 1; n <= max_level; ++n) {
    LevelEvidence le;
    le.level = n;
    try {
      if (n <= d) {
        prev = n < d ? truncate_image(p.group(), n) : p.group();
      } else if (prev && prev->depth() == n - 1 && n <= packed::kMaxPackedDepth) {
        const kernels::ExtensionTable table(p.group().elements(), d);
        prev = EnumeratedSubgroup(n, kernels::extend_parallel(prev->elements(), table, n, cap), {}, false);
      } else {
        prev.reset();
      }
    } catch (const ResourceError&) {
      prev.reset();
    }
    if (prev) {
      le.computed = true;
      le.order = prev->order();
      le.transitive = is_transitive_on_level(*prev, n);
      if (!le.transitive && !ev.first_nontransitive) ev.first_nontransitive = n;
    }
    ev.levels.push_back(le);
  }
  if (d + 1 <= packed::kMaxPackedDepth) {
    const kernels::ExtensionTable table(p.group().elements(), d);
    ev.order_grows = kernels::count_extensions_total(p.group().elements(), table, d + 1) > p.group().order();
  }
  return ev;
}

bool is_level_transitive(const PatternGroup& p, std::size_t cap) {
  const bool infinite = !is_finite(p);
  const auto ev = transitivity_evidence(p, p.depth() + 2, cap);
  if (infinite && ev.first_nontransitive) {
    throw TheoremViolation("infinite G_P fails transitivity on level " + std::to_string(*ev.first_nontransitive));
  }
  if (ev.order_grows && *ev.order_grows != infinite) {
    throw TheoremViolation("truncation order growth disagrees with |P_{d-1}|");
  }
  return infinite;
}

bool dimension_in_allowed_set(const PatternGroup& p) {
  const int d = p.depth();
  const Rational dim = hausdorff_dimension(p);
  const std::int64_t scale = std::int64_t{1} << (d - 1);
  if (dim < Rational(0) || Rational(1) < dim || scale % dim.den() != 0) return false;
  if (dim == Rational(0)) {
    if (d + 1 <= packed::kMaxPackedDepth) {
      const kernels::ExtensionTable table(p.group().elements(), d);
      if (kernels::count_extensions_total(p.group().elements(), table, d + 1) != p.group().order()) return false;
    }
  }
  if (dim == Rational(1)) {
    if (p.group().order() != (std::size_t{1} << vertex_count(d))) return false;
  }
  return true;
}

PsiIndexResult psi_image_index(const PatternGroup& p, std::size_t cap) {
  require_essential(p, "psi_image_index");
  const int d = p.depth();
  if (d < 2) throw std::invalid_argument("psi_image_index needs d >= 2");
  PsiIndexResult res;
  const kernels::ExtensionTable table(p.group().elements(), d);
  EnumeratedSubgroup cur = level_group(p, d - 1, cap);
  for (int n = d - 1; n + 1 <= packed::kMaxPackedDepth; ++n) {
    std::vector<Key> next_elems;
    try {
      if (n + 1 == d) {
        next_elems.assign(p.group().elements().begin(), p.group().elements().end());
      } else {
        next_elems = kernels::extend_parallel(cur.elements(), table, n + 1, cap);
      }
    } catch (const ResourceError&) {
      break;
    }
    PsiIndexStep step;
    step.n = n;
    step.h_order = cur.order();
    std::vector<Key> image;
    const std::size_t width = vertex_count(n);
    for (Key g : next_elems) {
      if (g & 1u) continue;
      ++step.stabilizer_order;
      const Key left = packed::subpattern(g, 1, 0, n);
      const Key right = packed::subpattern(g, 1, 1, n);
      if (!cur.contains_key(left) || !cur.contains_key(right)) {
        throw TheoremViolation("a section of the first-level stabilizer leaves H(" + std::to_string(n) + ")");
      }
      image.push_back(left | (right << width));
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    step.image_order = image.size();
    if (step.image_order != step.stabilizer_order) throw TheoremViolation("psi is not injective");
    const std::size_t product = step.h_order * step.h_order;
    if (product % step.image_order != 0) throw std::logic_error("psi image order does not divide |H x H|");
    step.index = product / step.image_order;
    res.steps.push_back(step);
    if (res.steps.size() >= 2 && res.steps[res.steps.size() - 2].index == step.index) {
      res.stabilized = true;
      res.index = step.index;
      return res;
    }
    cur = EnumeratedSubgroup(n + 1, std::move(next_elems), {}, false);
  }
  if (!res.steps.empty()) res.index = res.steps.back().index;
  return res;
}

}  // namespace treegrp
