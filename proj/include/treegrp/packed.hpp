#pragma once

// Single-word portraits for depth <= 6 (at most 63 labels). The key of an
// element is the integer whose bit k is the label at heap index k, i.e. the
// little-endian reading of its canonical byte encoding. All enumeration code
// works on keys.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "treegrp/portrait.hpp"

namespace treegrp::packed {

using Key = std::uint64_t;

inline constexpr int kMaxPackedDepth = 6;

constexpr Key low_bits(std::size_t n) { return n >= 64 ? ~Key{0} : (Key{1} << n) - 1; }

/// Labels on levels 0..k-1.
constexpr Key prefix_mask(int k) { return low_bits(vertex_count(k)); }

/// Labels on level j.
constexpr Key level_mask(int j) { return low_bits(std::size_t{1} << j) << level_offset(j); }

inline void check_packed_depth(int depth) {
  if (depth < 1 || depth > kMaxPackedDepth) {
    throw std::invalid_argument("packed portraits need depth in [1, 6], got " + std::to_string(depth));
  }
}

inline Key from_automorphism(const FiniteAutomorphism& g) {
  check_packed_depth(g.depth());
  return g.words()[0];
}

inline FiniteAutomorphism to_automorphism(Key k, int depth) {
  return FiniteAutomorphism::from_words(depth, {k});
}

inline bool bit(Key g, std::size_t i) { return (g >> i) & 1u; }

/// hg: g first, then h.
inline Key compose(Key h, Key g, int depth) {
  const std::size_t n = vertex_count(depth);
  std::uint8_t img[64];
  img[0] = 0;
  Key r = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const Key gb = (g >> u) & 1u;
    r |= (((h >> img[u]) & 1u) ^ gb) << u;
    if (2 * u + 1 < n) {
      // children of u map to children of img[u], swapped when gb is set
      img[2 * u + 1] = static_cast<std::uint8_t>(2 * img[u] + 1 + gb);
      img[2 * u + 2] = static_cast<std::uint8_t>(2 * img[u] + 2 - gb);
    }
  }
  return r;
}

inline Key invert(Key g, int depth) {
  const std::size_t n = vertex_count(depth);
  std::uint8_t img[64];
  img[0] = 0;
  Key r = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const Key gb = (g >> u) & 1u;
    r |= gb << img[u];
    if (2 * u + 1 < n) {
      img[2 * u + 1] = static_cast<std::uint8_t>(2 * img[u] + 1 + gb);
      img[2 * u + 2] = static_cast<std::uint8_t>(2 * img[u] + 2 - gb);
    }
  }
  return r;
}

inline Key commutator(Key g, Key h, int depth) {
  return compose(compose(compose(invert(g, depth), invert(h, depth), depth), g, depth), h, depth);
}

/// h^g = g^-1 h g.
inline Key conjugate(Key h, Key g, int depth) {
  return compose(compose(invert(g, depth), h, depth), g, depth);
}

/// Path of g(v) for the vertex at (level, path).
inline std::uint32_t apply_path(Key g, int level, std::uint32_t path) {
  std::uint32_t out = 0;
  std::uint32_t prefix = 0;
  for (int k = 0; k < level; ++k) {
    const std::uint32_t x = (path >> (level - 1 - k)) & 1u;
    const auto lbl = static_cast<std::uint32_t>((g >> (level_offset(k) + prefix)) & 1u);
    out = (out << 1) | (x ^ lbl);
    prefix = (prefix << 1) | x;
  }
  return out;
}

/// Size-k pattern at the vertex (level, path).
inline Key subpattern(Key g, int level, std::uint32_t path, int k) {
  Key out = 0;
  for (int j = 0; j < k; ++j) {
    const std::size_t width = std::size_t{1} << j;
    const Key bits = (g >> (level_offset(level + j) + (std::size_t{path} << j))) & low_bits(width);
    out |= bits << level_offset(j);
  }
  return out;
}

inline Key truncate(Key g, int k) { return g & prefix_mask(k); }

inline Key generator(int depth, int i) {
  if (i < 0 || i >= depth) throw std::out_of_range("generator index out of range");
  return Key{1} << level_offset(i);
}

}  // namespace treegrp::packed
