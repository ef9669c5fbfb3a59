#include "treegrp/portrait.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "treegrp/errors.hpp"

namespace treegrp {

namespace {

std::size_t word_count(int depth) { return (vertex_count(depth) + 63) / 64; }

inline bool get_bit(std::span<const std::uint64_t> w, std::size_t i) {
  return (w[i >> 6] >> (i & 63)) & 1u;
}

inline void set_bit(std::vector<std::uint64_t>& w, std::size_t i) {
  w[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void require_same_depth(const FiniteAutomorphism& a, const FiniteAutomorphism& b, const char* op) {
  if (a.depth() != b.depth()) {
    throw std::invalid_argument(std::string(op) + ": depth mismatch (" +
                                std::to_string(a.depth()) + " vs " + std::to_string(b.depth()) + ")");
  }
}

// Copies the k-level subtree of g rooted at v into a fresh portrait.
std::vector<std::uint64_t> copy_subtree(const FiniteAutomorphism& g, const Vertex& v, int k) {
  std::vector<std::uint64_t> out(word_count(k), 0);
  const auto src = g.words();
  for (int j = 0; j < k; ++j) {
    const std::size_t from = level_offset(v.level() + j) + (std::size_t{v.path()} << j);
    const std::size_t to = level_offset(j);
    const std::size_t len = std::size_t{1} << j;
    for (std::size_t q = 0; q < len; ++q) {
      if (get_bit(src, from + q)) set_bit(out, to + q);
    }
  }
  return out;
}

}  // namespace

void check_depth(int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1, got " + std::to_string(depth));
  if (depth > kMaxDepth) {
    throw ResourceError("depth " + std::to_string(depth) + " exceeds the supported maximum " +
                        std::to_string(kMaxDepth));
  }
}

// ---- Vertex ----

Vertex::Vertex(int level, std::uint32_t path) : level_(level), path_(path) {
  if (level < 0 || level > kMaxDepth) throw std::invalid_argument("vertex level out of range");
  if (level < 32 && (path >> level) != 0) throw std::invalid_argument("vertex path wider than its level");
}

Vertex Vertex::parse(std::string_view word) {
  if (word.size() > static_cast<std::size_t>(kMaxDepth)) throw std::invalid_argument("word too long");
  std::uint32_t path = 0;
  for (char c : word) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("word may only contain '0' and '1', got '" + std::string(word) + "'");
    }
    path = (path << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return Vertex(static_cast<int>(word.size()), path);
}

Vertex Vertex::from_heap_index(std::size_t index) {
  const int level = static_cast<int>(std::bit_width(index + 1)) - 1;
  return Vertex(level, static_cast<std::uint32_t>(index - level_offset(level)));
}

Vertex Vertex::drop(int k) const {
  if (k < 0 || k > level_) throw std::invalid_argument("Vertex::drop out of range");
  const int rest = level_ - k;
  const std::uint32_t mask = rest == 0 ? 0u : (rest >= 32 ? ~0u : ((1u << rest) - 1));
  return Vertex(rest, path_ & mask);
}

std::string Vertex::str() const {
  std::string s(static_cast<std::size_t>(level_), '0');
  for (int k = 0; k < level_; ++k) s[static_cast<std::size_t>(k)] = static_cast<char>('0' + symbol(k));
  return s;
}

Vertex concat(const Vertex& u, const Vertex& v) {
  return Vertex(u.level_ + v.level_, (u.path_ << v.level_) | v.path_);
}

// ---- LevelSet ----

LevelSet::LevelSet(std::initializer_list<int> levels) {
  for (int l : levels) {
    if (l < 0 || l >= 32) throw std::invalid_argument("level out of range");
    mask_ |= std::uint32_t{1} << l;
  }
}

LevelSet LevelSet::from_list(std::span<const int> levels) {
  LevelSet s;
  for (int l : levels) {
    if (l < 0 || l >= 32) throw std::invalid_argument("level out of range: " + std::to_string(l));
    s.mask_ |= std::uint32_t{1} << l;
  }
  return s;
}

int LevelSet::max_level() const { return mask_ == 0 ? -1 : static_cast<int>(std::bit_width(mask_)) - 1; }

std::vector<int> LevelSet::list() const {
  std::vector<int> out;
  for (int l = 0; l < 32; ++l)
    if (contains(l)) out.push_back(l);
  return out;
}

std::string LevelSet::str() const {
  std::string s = "{";
  bool first = true;
  for (int l : list()) {
    if (!first) s += ",";
    s += std::to_string(l);
    first = false;
  }
  return s + "}";
}

// ---- FiniteAutomorphism ----

FiniteAutomorphism FiniteAutomorphism::identity(int depth) {
  check_depth(depth);
  return FiniteAutomorphism(depth, std::vector<std::uint64_t>(word_count(depth), 0));
}

FiniteAutomorphism FiniteAutomorphism::generator(int depth, int i) {
  check_depth(depth);
  if (i < 0 || i >= depth) {
    throw std::out_of_range("generator index " + std::to_string(i) + " outside [0, " +
                            std::to_string(depth - 1) + "]");
  }
  std::vector<std::uint64_t> w(word_count(depth), 0);
  set_bit(w, level_offset(i));
  return FiniteAutomorphism(depth, std::move(w));
}

FiniteAutomorphism FiniteAutomorphism::from_words(int depth, std::vector<std::uint64_t> words) {
  check_depth(depth);
  if (words.size() != word_count(depth)) throw std::invalid_argument("portrait word count mismatch");
  const std::size_t tail = vertex_count(depth) % 64;
  if (tail != 0 && (words.back() >> tail) != 0) {
    throw std::invalid_argument("portrait has bits set beyond 2^d - 1");
  }
  return FiniteAutomorphism(depth, std::move(words));
}

FiniteAutomorphism FiniteAutomorphism::from_labels(int depth, std::span<const std::size_t> heap_indices) {
  check_depth(depth);
  std::vector<std::uint64_t> w(word_count(depth), 0);
  for (std::size_t i : heap_indices) {
    if (i >= vertex_count(depth)) throw std::out_of_range("label index beyond portrait");
    w[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }
  return FiniteAutomorphism(depth, std::move(w));
}

FiniteAutomorphism FiniteAutomorphism::from_labels(int depth, std::initializer_list<std::size_t> heap_indices) {
  return from_labels(depth, std::span<const std::size_t>(heap_indices.begin(), heap_indices.size()));
}

FiniteAutomorphism FiniteAutomorphism::random(int depth, std::mt19937_64& rng) {
  check_depth(depth);
  std::vector<std::uint64_t> w(word_count(depth));
  for (auto& x : w) x = rng();
  const std::size_t tail = vertex_count(depth) % 64;
  if (tail != 0) w.back() &= (std::uint64_t{1} << tail) - 1;
  return FiniteAutomorphism(depth, std::move(w));
}

bool FiniteAutomorphism::is_identity() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t x) { return x == 0; });
}

FiniteAutomorphism FiniteAutomorphism::flipped(std::size_t heap_index) const {
  if (heap_index >= size()) throw std::out_of_range("label index beyond portrait");
  auto w = words_;
  w[heap_index >> 6] ^= std::uint64_t{1} << (heap_index & 63);
  return FiniteAutomorphism(depth_, std::move(w));
}

// ---- arithmetic ----

Vertex apply(const FiniteAutomorphism& g, const Vertex& w) {
  if (w.level() > g.depth()) {
    throw std::invalid_argument("word of length " + std::to_string(w.level()) +
                                " is too long for depth " + std::to_string(g.depth()));
  }
  std::uint32_t out = 0;
  for (int k = 0; k < w.level(); ++k) {
    const int x = w.symbol(k);
    const bool lbl = g.label(w.prefix(k));
    out = (out << 1) | static_cast<std::uint32_t>(x ^ (lbl ? 1 : 0));
  }
  return Vertex(w.level(), out);
}

FiniteAutomorphism compose(const FiniteAutomorphism& h, const FiniteAutomorphism& g) {
  require_same_depth(h, g, "compose");
  const int d = g.depth();
  std::vector<std::uint64_t> out(word_count(d), 0);
  const auto gw = g.words();
  const auto hw = h.words();
  // img[p] = path of g(v) for the level-j vertex v with path p.
  std::vector<std::uint32_t> img{0};
  std::vector<std::uint32_t> next;
  for (int j = 0; j < d; ++j) {
    const std::size_t base = level_offset(j);
    const std::size_t width = std::size_t{1} << j;
    const bool last = j + 1 == d;
    if (!last) next.assign(width * 2, 0);
    for (std::size_t p = 0; p < width; ++p) {
      const bool gb = get_bit(gw, base + p);
      const std::uint32_t q = img[p];
      if (get_bit(hw, base + q) != gb) set_bit(out, base + p);
      if (!last) {
        next[2 * p] = 2 * q + (gb ? 1u : 0u);
        next[2 * p + 1] = 2 * q + (gb ? 0u : 1u);
      }
    }
    img.swap(next);
  }
  return FiniteAutomorphism::from_words(d, std::move(out));
}

FiniteAutomorphism invert(const FiniteAutomorphism& g) {
  const int d = g.depth();
  std::vector<std::uint64_t> out(word_count(d), 0);
  const auto gw = g.words();
  std::vector<std::uint32_t> img{0};
  std::vector<std::uint32_t> next;
  for (int j = 0; j < d; ++j) {
    const std::size_t base = level_offset(j);
    const std::size_t width = std::size_t{1} << j;
    const bool last = j + 1 == d;
    if (!last) next.assign(width * 2, 0);
    for (std::size_t p = 0; p < width; ++p) {
      const bool gb = get_bit(gw, base + p);
      const std::uint32_t q = img[p];
      if (gb) set_bit(out, base + q);
      if (!last) {
        next[2 * p] = 2 * q + (gb ? 1u : 0u);
        next[2 * p + 1] = 2 * q + (gb ? 0u : 1u);
      }
    }
    img.swap(next);
  }
  return FiniteAutomorphism::from_words(d, std::move(out));
}

FiniteAutomorphism commutator(const FiniteAutomorphism& g, const FiniteAutomorphism& h) {
  return compose(compose(compose(invert(g), invert(h)), g), h);
}

FiniteAutomorphism conjugate(const FiniteAutomorphism& h, const FiniteAutomorphism& g) {
  return compose(compose(invert(g), h), g);
}

FiniteAutomorphism word_product(int depth, std::span<const int> generator_indices) {
  auto r = FiniteAutomorphism::identity(depth);
  for (int i : generator_indices) r = compose(r, FiniteAutomorphism::generator(depth, i));
  return r;
}

FiniteAutomorphism section(const FiniteAutomorphism& g, const Vertex& w) {
  if (w.level() >= g.depth()) {
    throw std::invalid_argument("section: |w| = " + std::to_string(w.level()) +
                                " must be below depth " + std::to_string(g.depth()));
  }
  const int k = g.depth() - w.level();
  return FiniteAutomorphism::from_words(k, copy_subtree(g, w, k));
}

FiniteAutomorphism truncate(const FiniteAutomorphism& g, int k) {
  if (k < 1 || k > g.depth()) {
    throw std::out_of_range("truncate: level " + std::to_string(k) + " outside [1, " +
                            std::to_string(g.depth()) + "]");
  }
  return FiniteAutomorphism::from_words(k, copy_subtree(g, Vertex(), k));
}

FiniteAutomorphism subpattern(const FiniteAutomorphism& g, const Vertex& v, int k) {
  if (k < 1 || v.level() + k > g.depth()) {
    throw std::out_of_range("subpattern: |v| + k = " + std::to_string(v.level() + k) +
                            " exceeds depth " + std::to_string(g.depth()));
  }
  return FiniteAutomorphism::from_words(k, copy_subtree(g, v, k));
}

bool pattern_appears(const FiniteAutomorphism& pattern, const FiniteAutomorphism& g, const Vertex& w) {
  return subpattern(g, w, pattern.depth()) == pattern;
}

Parity root_activity(const FiniteAutomorphism& g) { return Parity(g.label(0)); }

Parity activity_at(const FiniteAutomorphism& g, const Vertex& v) {
  if (v.level() >= g.depth()) throw std::out_of_range("activity_at: vertex below the last labelled level");
  return Parity(g.label(v));
}

Parity range_parity(const FiniteAutomorphism& g, std::size_t first, std::size_t count) {
  const auto w = g.words();
  std::uint64_t acc = 0;
  std::size_t i = first;
  const std::size_t end = first + count;
  while (i < end) {
    const std::size_t off = i & 63;
    const std::size_t take = std::min<std::size_t>(64 - off, end - i);
    const std::uint64_t mask = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1) << off;
    acc ^= w[i >> 6] & mask;
    i += take;
  }
  return Parity((std::popcount(acc) & 1) != 0);
}

Parity alpha_J(const FiniteAutomorphism& g, LevelSet levels) {
  if (levels.max_level() >= g.depth()) {
    throw std::invalid_argument("alpha_J: level " + std::to_string(levels.max_level()) +
                                " not below depth " + std::to_string(g.depth()));
  }
  Parity p;
  for (int j : levels.list()) p += range_parity(g, level_offset(j), std::size_t{1} << j);
  return p;
}

// ---- metric ----

Distance distance(const FiniteAutomorphism& g, const FiniteAutomorphism& h) {
  require_same_depth(g, h, "distance");
  const auto a = g.words();
  const auto b = h.words();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::uint64_t x = a[k] ^ b[k];
    if (x == 0) continue;
    const std::size_t idx = k * 64 + static_cast<std::size_t>(std::countr_zero(x));
    const int n = static_cast<int>(std::bit_width(idx + 1)) - 1;
    Distance d;
    d.zero = false;
    d.agree_to_full_depth = false;
    d.first_disagreement_level = n;
    d.log2_inverse = (std::uint64_t{1} << n) - 1;
    return d;
  }
  return Distance{};
}

bool operator<(const Distance& a, const Distance& b) {
  if (a.zero || b.zero) return a.zero && !b.zero;
  return a.log2_inverse > b.log2_inverse;
}

std::string Distance::str() const {
  if (zero) return "0";
  if (log2_inverse == 0) return "1";
  if (log2_inverse < 63) return "1/" + std::to_string(std::uint64_t{1} << log2_inverse);
  return "1/2^" + std::to_string(log2_inverse);
}

// ---- serialization ----

std::size_t encoded_size(int depth) { return (vertex_count(depth) + 7) / 8; }

std::vector<std::uint8_t> encode(const FiniteAutomorphism& g) {
  std::vector<std::uint8_t> out(encoded_size(g.depth()));
  const auto w = g.words();
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = static_cast<std::uint8_t>(w[b / 8] >> (8 * (b % 8)));
  }
  return out;
}

FiniteAutomorphism decode(std::span<const std::uint8_t> bytes, int depth) {
  check_depth(depth);
  if (bytes.size() != encoded_size(depth)) {
    throw std::invalid_argument("portrait for depth " + std::to_string(depth) + " needs " +
                                std::to_string(encoded_size(depth)) + " bytes, got " +
                                std::to_string(bytes.size()));
  }
  std::vector<std::uint64_t> w(word_count(depth), 0);
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    w[b / 8] |= std::uint64_t{bytes[b]} << (8 * (b % 8));
  }
  const std::size_t tail = vertex_count(depth) % 64;
  if (tail != 0 && (w.back() >> tail) != 0) {
    throw std::invalid_argument("portrait has nonzero padding bits beyond 2^d - 1");
  }
  return FiniteAutomorphism::from_words(depth, std::move(w));
}

std::string to_hex(const FiniteAutomorphism& g) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  for (std::uint8_t b : encode(g)) {
    s += kDigits[b >> 4];
    s += kDigits[b & 15];
  }
  return s;
}

FiniteAutomorphism from_hex(std::string_view hex, int depth) {
  check_depth(depth);
  if (hex.size() != 2 * encoded_size(depth)) {
    throw std::invalid_argument("hex portrait for depth " + std::to_string(depth) + " needs " +
                                std::to_string(2 * encoded_size(depth)) + " digits, got " +
                                std::to_string(hex.size()));
  }
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
  };
  std::vector<std::uint8_t> bytes(hex.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return decode(bytes, depth);
}

}  // namespace treegrp
