#pragma once

// Elements of G(d), the automorphism group of the binary rooted tree with d
// levels of internal vertices, stored as portraits.
//
// Vertices are indexed in heap order: the root is 0 and the children of
// vertex i are 2i+1 (symbol 0) and 2i+2 (symbol 1). Level j occupies the
// contiguous range [2^j - 1, 2^{j+1} - 2]. The label at a vertex is 1 when the
// automorphism swaps the two children there.
//
// Composition follows left-action notation: compose(h, g) applies g first,
// so (hg)(w) = h(g(w)) and the chain rule reads (hg)_u = h_{g(u)} g_u.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace treegrp {

inline constexpr int kMaxDepth = 24;

/// Number of internal vertices (= portrait bits) of a depth-d tree.
constexpr std::size_t vertex_count(int depth) { return (std::size_t{1} << depth) - 1; }

/// Heap index of the leftmost vertex of a level.
constexpr std::size_t level_offset(int level) { return (std::size_t{1} << level) - 1; }

/// An element of C_2 = Sym({0,1}).
struct Parity {
  std::uint8_t bit = 0;

  constexpr Parity() = default;
  constexpr explicit Parity(bool b) : bit(b ? 1 : 0) {}

  constexpr int value() const { return bit; }
  constexpr explicit operator bool() const { return bit != 0; }

  friend constexpr Parity operator+(Parity a, Parity b) { return Parity((a.bit ^ b.bit) != 0); }
  friend constexpr Parity operator*(Parity a, Parity b) { return Parity((a.bit & b.bit) != 0); }
  Parity& operator+=(Parity o) { bit ^= o.bit; return *this; }
  friend constexpr bool operator==(Parity, Parity) = default;
};

/// A word over {0,1}; the empty word is the root. Symbols are packed into an
/// integer with the first symbol most significant, so the heap index of a
/// vertex is level_offset(level) + path.
class Vertex {
 public:
  constexpr Vertex() = default;
  Vertex(int level, std::uint32_t path);

  static Vertex parse(std::string_view word);
  static Vertex from_heap_index(std::size_t index);
  static Vertex zeros(int level) { return Vertex(level, 0); }

  int level() const { return level_; }
  std::uint32_t path() const { return path_; }
  std::size_t heap_index() const { return level_offset(level_) + path_; }

  /// Symbol x_{k+1}, for 0 <= k < level().
  int symbol(int k) const { return static_cast<int>((path_ >> (level_ - 1 - k)) & 1u); }
  Vertex child(int x) const { return Vertex(level_ + 1, (path_ << 1) | static_cast<std::uint32_t>(x & 1)); }
  Vertex prefix(int len) const { return Vertex(len, path_ >> (level_ - len)); }
  /// The word with its first k symbols removed.
  Vertex drop(int k) const;

  std::string str() const;

  friend Vertex concat(const Vertex& u, const Vertex& v);
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex& a, const Vertex& b) {
    return a.heap_index() <=> b.heap_index();
  }

 private:
  int level_ = 0;
  std::uint32_t path_ = 0;
};

/// Set of tree levels (the J of alpha_J), held as a bitmask.
class LevelSet {
 public:
  constexpr LevelSet() = default;
  constexpr explicit LevelSet(std::uint32_t mask) : mask_(mask) {}
  LevelSet(std::initializer_list<int> levels);
  static LevelSet from_list(std::span<const int> levels);
  static LevelSet all(int depth) { return LevelSet((std::uint32_t{1} << depth) - 1); }

  std::uint32_t mask() const { return mask_; }
  bool contains(int level) const { return level >= 0 && level < 32 && ((mask_ >> level) & 1u); }
  bool empty() const { return mask_ == 0; }
  /// Largest member, or -1 when empty.
  int max_level() const;
  LevelSet without(int level) const { return LevelSet(mask_ & ~(std::uint32_t{1} << level)); }
  std::vector<int> list() const;
  std::string str() const;

  friend bool operator==(LevelSet, LevelSet) = default;

 private:
  std::uint32_t mask_ = 0;
};

class FiniteAutomorphism {
 public:
  static FiniteAutomorphism identity(int depth);
  /// a_i: the only nontrivial label sits at the vertex 0^i.
  static FiniteAutomorphism generator(int depth, int i);
  /// Words hold bit k at word k/64, position k%64; bits past 2^d-1 must be 0.
  static FiniteAutomorphism from_words(int depth, std::vector<std::uint64_t> words);
  static FiniteAutomorphism from_labels(int depth, std::span<const std::size_t> heap_indices);
  static FiniteAutomorphism from_labels(int depth, std::initializer_list<std::size_t> heap_indices);
  /// Haar-uniform element: independent fair bits over the portrait.
  static FiniteAutomorphism random(int depth, std::mt19937_64& rng);

  int depth() const { return depth_; }
  std::size_t size() const { return vertex_count(depth_); }
  bool label(std::size_t heap_index) const {
    return (words_[heap_index >> 6] >> (heap_index & 63)) & 1u;
  }
  bool label(const Vertex& v) const { return label(v.heap_index()); }
  std::span<const std::uint64_t> words() const { return words_; }
  bool is_identity() const;

  /// Copy with one label flipped.
  FiniteAutomorphism flipped(std::size_t heap_index) const;

  friend bool operator==(const FiniteAutomorphism&, const FiniteAutomorphism&) = default;

 private:
  FiniteAutomorphism(int depth, std::vector<std::uint64_t> words)
      : depth_(depth), words_(std::move(words)) {}

  int depth_ = 1;
  std::vector<std::uint64_t> words_;
};

/// Image of the word w; output symbol k is x_k XOR the label at x_1...x_{k-1}.
Vertex apply(const FiniteAutomorphism& g, const Vertex& w);
/// The product hg: g first, then h.
FiniteAutomorphism compose(const FiniteAutomorphism& h, const FiniteAutomorphism& g);
FiniteAutomorphism invert(const FiniteAutomorphism& g);
/// [g,h] = g^-1 h^-1 g h.
FiniteAutomorphism commutator(const FiniteAutomorphism& g, const FiniteAutomorphism& h);
/// h^g = g^-1 h g.
FiniteAutomorphism conjugate(const FiniteAutomorphism& h, const FiniteAutomorphism& g);
/// Left-to-right product of generators a_{i_1} a_{i_2} ... (identity for the empty word).
FiniteAutomorphism word_product(int depth, std::span<const int> generator_indices);

/// g_w, an element of G(d - |w|).
FiniteAutomorphism section(const FiniteAutomorphism& g, const Vertex& w);
/// Restriction to the first k levels.
FiniteAutomorphism truncate(const FiniteAutomorphism& g, int k);
/// Size-k pattern of g rooted at v; equals truncate(section(g, v), k).
FiniteAutomorphism subpattern(const FiniteAutomorphism& g, const Vertex& v, int k);
bool pattern_appears(const FiniteAutomorphism& pattern, const FiniteAutomorphism& g, const Vertex& w);

Parity root_activity(const FiniteAutomorphism& g);
Parity activity_at(const FiniteAutomorphism& g, const Vertex& v);
/// XOR of all labels on the levels in J.
Parity alpha_J(const FiniteAutomorphism& g, LevelSet levels);
/// XOR of the labels at heap indices [first, first + count).
Parity range_parity(const FiniteAutomorphism& g, std::size_t first, std::size_t count);

/// Truncated ultrametric. With n the first level carrying a differing label,
/// the distance is 1/2^(2^n - 1). Identical portraits give 0 and set
/// agree_to_full_depth: the stored depth cannot distinguish them further.
struct Distance {
  bool zero = true;
  bool agree_to_full_depth = true;
  int first_disagreement_level = -1;
  /// distance = 2^-log2_inverse when !zero.
  std::uint64_t log2_inverse = 0;

  std::string str() const;
  /// Ultrametric order; zero is smallest.
  friend bool operator<(const Distance& a, const Distance& b);
  friend bool operator==(const Distance&, const Distance&) = default;
};
Distance distance(const FiniteAutomorphism& g, const FiniteAutomorphism& h);

/// Bit k of the result (byte k/8, bit k%8 from the least significant) is the
/// label at heap index k.
std::vector<std::uint8_t> encode(const FiniteAutomorphism& g);
FiniteAutomorphism decode(std::span<const std::uint8_t> bytes, int depth);
std::size_t encoded_size(int depth);

/// Lowercase hex of encode(g), no prefix.
std::string to_hex(const FiniteAutomorphism& g);
FiniteAutomorphism from_hex(std::string_view hex, int depth);

void check_depth(int depth);

}  // namespace treegrp
