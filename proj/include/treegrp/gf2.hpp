#pragma once

// Bit-packed linear algebra over GF(2): vectors, row reduction, rank and
// nullspace. Used to count and describe subgroups that are solution sets of
// parity constraints on portrait bits.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace treegrp::gf2 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}
  static BitVector from_words(std::size_t nbits, std::span<const std::uint64_t> words);

  std::size_t size() const { return nbits_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    words_[i >> 6] = v ? (words_[i >> 6] | m) : (words_[i >> 6] & ~m);
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& o);
  /// Inner product mod 2.
  bool dot(const BitVector& o) const;
  bool dot(std::span<const std::uint64_t> words) const;
  bool is_zero() const;
  /// Index of the lowest set bit, or size() when zero.
  std::size_t lowest() const;
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Reduced row echelon form of a set of row vectors of a common width.
class Echelon {
 public:
  Echelon(std::vector<BitVector> rows, std::size_t ncols);

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return ncols_; }
  const std::vector<BitVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v against the echelon rows; zero iff v is in the row space.
  BitVector reduce(BitVector v) const;
  bool in_span(const BitVector& v) const { return reduce(v).is_zero(); }
  /// Basis of { x : r . x = 0 for every row r }.
  std::vector<BitVector> nullspace() const;

 private:
  std::size_t ncols_;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(std::vector<BitVector> rows, std::size_t ncols);

/// Basis of the common kernel of the given functionals.
std::vector<BitVector> kernel_basis(std::vector<BitVector> functionals, std::size_t ncols);

}  // namespace treegrp::gf2
