#include "treegrp/subgroup.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <set>
#include <stdexcept>

#include "treegrp/kernels.hpp"

namespace treegrp {

using packed::Key;

namespace {

std::vector<Key> keys_of(std::span<const FiniteAutomorphism> gens, int depth) {
  std::vector<Key> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.depth() != depth) throw std::invalid_argument("generator depth mismatch");
    out.push_back(packed::from_automorphism(g));
  }
  return out;
}

bool sorted_contains(std::span<const Key> sorted, Key k) { return std::binary_search(sorted.begin(), sorted.end(), k); }

}  // namespace

// ---- EnumeratedSubgroup ----

EnumeratedSubgroup::EnumeratedSubgroup(int depth, std::vector<Key> sorted_elements, std::vector<Key> generators,
                                       bool generators_known)
    : depth_(depth),
      elements_(std::move(sorted_elements)),
      generators_(std::move(generators)),
      generators_known_(generators_known) {
  packed::check_packed_depth(depth);
}

EnumeratedSubgroup EnumeratedSubgroup::trivial(int depth) { return EnumeratedSubgroup(depth, {0}, {}, true); }

int EnumeratedSubgroup::log2_order() const {
  const std::size_t n = order();
  if (!std::has_single_bit(n)) throw std::logic_error("subgroup order " + std::to_string(n) + " is not a power of 2");
  return std::countr_zero(n);
}

bool EnumeratedSubgroup::contains(const FiniteAutomorphism& g) const {
  if (g.depth() != depth_) throw std::invalid_argument("contains: depth mismatch");
  return contains_key(packed::from_automorphism(g));
}

bool EnumeratedSubgroup::contains_key(Key k) const { return sorted_contains(elements_, k); }

std::vector<FiniteAutomorphism> EnumeratedSubgroup::generators() const {
  std::vector<FiniteAutomorphism> out;
  for (Key k : generators_) out.push_back(packed::to_automorphism(k, depth_));
  return out;
}

bool EnumeratedSubgroup::is_subset_of(const EnumeratedSubgroup& other) const {
  return depth_ == other.depth_ &&
         std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

bool EnumeratedSubgroup::verify_closed() const {
  if (!contains_key(0)) return false;
  std::vector<Key> gens;
  std::vector<Key> current{0};
  for (Key x : elements_) {
    if (sorted_contains(current, x)) continue;
    gens.push_back(x);
    try {
      current = kernels::close_parallel(gens, depth_, elements_.size());
    } catch (const ResourceError&) {
      return false;
    }
    if (!std::includes(elements_.begin(), elements_.end(), current.begin(), current.end())) return false;
  }
  return current.size() == elements_.size();
}

// ---- construction ----

EnumeratedSubgroup close_keys(int depth, std::span<const Key> generators, std::size_t cap) {
  auto elems = kernels::close_parallel(generators, depth, cap);
  return EnumeratedSubgroup(depth, std::move(elems), {generators.begin(), generators.end()}, true);
}

EnumeratedSubgroup close(int depth, std::span<const FiniteAutomorphism> generators, std::size_t cap) {
  packed::check_packed_depth(depth);
  const auto keys = keys_of(generators, depth);
  return close_keys(depth, keys, cap);
}

EnumeratedSubgroup full_group(int depth, std::size_t cap) {
  packed::check_packed_depth(depth);
  // |G(d)| is known, so an oversized request fails before any work
  if ((std::size_t{1} << vertex_count(depth)) > cap) {
    throw ResourceError("G(" + std::to_string(depth) + ") has 2^" + std::to_string(vertex_count(depth)) +
                        " elements, above the enumeration cap");
  }
  std::vector<Key> gens;
  for (int i = 0; i < depth; ++i) gens.push_back(packed::generator(depth, i));
  return close_keys(depth, gens, cap);
}

std::size_t index(const EnumeratedSubgroup& s, const EnumeratedSubgroup& t) {
  if (!t.is_subset_of(s)) throw std::invalid_argument("index: T is not a subgroup of S");
  return s.order() / t.order();
}

EnumeratedSubgroup level_stabilizer(const EnumeratedSubgroup& s, int n) {
  if (n < 0 || n > s.depth()) throw std::out_of_range("level_stabilizer: level out of range");
  const Key mask = packed::prefix_mask(n);
  std::vector<Key> out;
  for (Key k : s.elements()) {
    if ((k & mask) == 0) out.push_back(k);
  }
  if (n == 0) return s;
  return EnumeratedSubgroup(s.depth(), std::move(out), {}, false);
}

EnumeratedSubgroup truncate_image(const EnumeratedSubgroup& s, int k) {
  if (k < 1 || k > s.depth()) throw std::out_of_range("truncate_image: level out of range");
  std::vector<Key> out;
  out.reserve(s.order());
  for (Key x : s.elements()) out.push_back(packed::truncate(x, k));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::vector<Key> gens;
  for (Key g : s.generator_keys()) gens.push_back(packed::truncate(g, k));
  return EnumeratedSubgroup(k, std::move(out), std::move(gens), s.generators_known());
}

std::vector<Key> generating_set(const EnumeratedSubgroup& s, std::size_t cap) {
  std::vector<Key> gens;
  std::vector<Key> current{0};
  for (Key x : s.elements()) {
    if (sorted_contains(current, x)) continue;
    gens.push_back(x);
    current = kernels::close_parallel(gens, s.depth(), cap);
    if (current.size() == s.order()) break;
  }
  return gens;
}

EnumeratedSubgroup with_generators(const EnumeratedSubgroup& s, std::size_t cap) {
  if (s.generators_known()) return s;
  return EnumeratedSubgroup(s.depth(), {s.elements().begin(), s.elements().end()}, generating_set(s, cap), true);
}

EnumeratedSubgroup derived_subgroup(const EnumeratedSubgroup& s, std::size_t cap) {
  const int d = s.depth();
  const std::vector<Key> gens =
      s.generators_known() ? std::vector<Key>(s.generator_keys().begin(), s.generator_keys().end())
                           : generating_set(s, cap);
  std::vector<Key> seeds;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Key c = packed::commutator(gens[i], gens[j], d);
      if (c != 0) seeds.push_back(c);
    }
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::vector<Key> normal = kernels::close_parallel(seeds, d, cap);
  // Saturate under conjugation by the generators of s.
  bool changed = true;
  while (changed) {
    changed = false;
    for (Key g : gens) {
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        const Key c = packed::conjugate(seeds[i], g, d);
        if (!sorted_contains(normal, c)) {
          seeds.push_back(c);
          normal = kernels::close_parallel(seeds, d, cap);
          changed = true;
        }
      }
    }
  }
  return EnumeratedSubgroup(d, std::move(normal), std::move(seeds), true);
}

// ---- orbits ----

std::vector<Vertex> orbit(const EnumeratedSubgroup& s, const Vertex& v) {
  if (v.level() > s.depth()) throw std::invalid_argument("orbit: vertex deeper than the tree");
  std::set<std::uint32_t> seen{v.path()};
  if (s.generators_known()) {
    std::queue<std::uint32_t> todo;
    todo.push(v.path());
    while (!todo.empty()) {
      const std::uint32_t p = todo.front();
      todo.pop();
      for (Key g : s.generator_keys()) {
        const std::uint32_t q = packed::apply_path(g, v.level(), p);
        if (seen.insert(q).second) todo.push(q);
      }
    }
  } else {
    for (Key g : s.elements()) seen.insert(packed::apply_path(g, v.level(), v.path()));
  }
  std::vector<Vertex> out;
  for (std::uint32_t p : seen) out.emplace_back(v.level(), p);
  return out;
}

bool is_transitive_on_level(const EnumeratedSubgroup& s, int n) {
  if (n < 0 || n > s.depth()) throw std::out_of_range("is_transitive_on_level: level out of range");
  return orbit(s, Vertex::zeros(n)).size() == (std::size_t{1} << n);
}

// ---- distinguished families ----

EnumeratedSubgroup enumerate_predicate(const PredicateSubgroup& p, std::size_t cap) {
  const int d = p.depth();
  packed::check_packed_depth(d);
  std::vector<Key> masks;
  for (const auto& f : p.constraints()) masks.push_back(f.words()[0]);
  auto elems = kernels::filter_parallel(
      d,
      [&](Key k) {
        return std::none_of(masks.begin(), masks.end(), [k](Key m) { return (std::popcount(k & m) & 1) != 0; });
      },
      cap);
  return EnumeratedSubgroup(d, std::move(elems), {}, false);
}

EnumeratedSubgroup enumerate_PJ(int depth, LevelSet levels, std::size_t cap) {
  const auto pred = PredicateSubgroup::maximal(depth, levels);
  if (depth > packed::kMaxPackedDepth || vertex_count(depth) >= 63 ||
      (std::size_t{1} << vertex_count(depth)) > cap) {
    throw ResourceError("enumerating P_J at depth " + std::to_string(depth) +
                        " exceeds the enumeration cap; use the predicate form (maximal_subgroup) instead");
  }
  return enumerate_predicate(pred, cap);
}

std::vector<EnumeratedSubgroup> all_subgroups(int depth, std::size_t cap) {
  if (depth > 2) throw ResourceError("subgroup sweep is only supported for depth <= 2");
  const auto g = full_group(depth, cap);
  std::vector<EnumeratedSubgroup> out;
  const auto elems = g.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i; j < elems.size(); ++j) {
      std::vector<Key> gens;
      if (elems[i] != 0) gens.push_back(elems[i]);
      if (elems[j] != 0 && j != i) gens.push_back(elems[j]);
      auto s = close_keys(depth, gens, cap);
      if (std::none_of(out.begin(), out.end(), [&](const EnumeratedSubgroup& t) { return t == s; })) {
        out.push_back(std::move(s));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const EnumeratedSubgroup& a, const EnumeratedSubgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return std::lexicographical_compare(a.elements().begin(), a.elements().end(), b.elements().begin(),
                                        b.elements().end());
  });
  return out;
}

bool conjugate_label_check(const FiniteAutomorphism& h, const FiniteAutomorphism& g) {
  if (h.depth() != g.depth()) throw std::invalid_argument("conjugate_label_check: depth mismatch");
  const int d = h.depth();
  const std::size_t top = vertex_count(d - 1);
  for (std::size_t i = 0; i < top; ++i) {
    if (h.label(i)) throw std::invalid_argument("conjugate_label_check: h does not stabilize level d-1");
  }
  const auto c = conjugate(h, g);
  for (std::size_t i = 0; i < top; ++i) {
    if (c.label(i)) return false;
  }
  for (std::uint32_t p = 0; p < (1u << (d - 1)); ++p) {
    const Vertex v(d - 1, p);
    if (c.label(v) != h.label(apply(g, v))) return false;
  }
  return true;
}

bool in_derived_of_Gd(const FiniteAutomorphism& g) {
  for (int j = 0; j < g.depth(); ++j) {
    if (range_parity(g, level_offset(j), std::size_t{1} << j)) return false;
  }
  return true;
}

PresentationReport verify_presentation(int depth, std::size_t cap) {
  if (depth < 2) throw std::invalid_argument("verify_presentation needs d >= 2");
  check_depth(depth);
  PresentationReport r;
  r.depth = depth;
  std::vector<FiniteAutomorphism> a;
  for (int i = 0; i < depth; ++i) a.push_back(FiniteAutomorphism::generator(depth, i));
  for (int i = 0; i < depth; ++i) {
    ++r.involution_checks;
    if (!compose(a[i], a[i]).is_identity()) ++r.involution_failures;
  }
  for (int i = 0; i < depth; ++i) {
    for (int j = i + 1; j < depth; ++j) {
      const auto aj = conjugate(a[j], a[i]);
      for (int k = i + 1; k < depth; ++k) {
        ++r.commutation_checks;
        if (!commutator(aj, a[k]).is_identity()) ++r.commutation_failures;
      }
    }
  }
  if (depth <= packed::kMaxPackedDepth && vertex_count(depth) < 63 &&
      (std::size_t{1} << vertex_count(depth)) <= cap) {
    r.order_checked = true;
    r.expected_order = std::size_t{1} << vertex_count(depth);
    r.order = full_group(depth, cap).order();
  }
  return r;
}

}  // namespace treegrp
