#include "treegrp/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace treegrp::gf2 {

BitVector BitVector::from_words(std::size_t nbits, std::span<const std::uint64_t> words) {
  BitVector v(nbits);
  if (words.size() < v.words_.size()) throw std::invalid_argument("BitVector::from_words: too few words");
  std::copy_n(words.begin(), v.words_.size(), v.words_.begin());
  if (nbits % 64 != 0 && !v.words_.empty()) v.words_.back() &= (std::uint64_t{1} << (nbits % 64)) - 1;
  return v;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.nbits_ != nbits_) throw std::invalid_argument("BitVector: width mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
  return *this;
}

bool BitVector::dot(const BitVector& o) const { return dot(o.words_); }

bool BitVector::dot(std::span<const std::uint64_t> words) const {
  std::uint64_t acc = 0;
  const std::size_t n = std::min(words.size(), words_.size());
  for (std::size_t k = 0; k < n; ++k) acc ^= words_[k] & words[k];
  return (std::popcount(acc) & 1) != 0;
}

bool BitVector::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVector::lowest() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
  }
  return nbits_;
}

Echelon::Echelon(std::vector<BitVector> rows, std::size_t ncols) : ncols_(ncols) {
  for (const auto& r : rows) {
    if (r.size() != ncols) throw std::invalid_argument("Echelon: row width mismatch");
  }
  // Gauss-Jordan, pivot on the lowest set bit of each surviving row.
  for (auto& r : rows) {
    r = reduce(std::move(r));
    const std::size_t p = r.lowest();
    if (p == ncols) continue;
    for (auto& q : rows_) {
      if (q.get(p)) q ^= r;
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
  }
}

BitVector Echelon::reduce(BitVector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v.get(pivots_[i])) v ^= rows_[i];
  }
  return v;
}

std::vector<BitVector> Echelon::nullspace() const {
  std::vector<bool> is_pivot(ncols_, false);
  for (std::size_t p : pivots_) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (is_pivot[f]) continue;
    BitVector x(ncols_);
    x.set(f);
    // Fully reduced rows: pivot column p is set only in its own row, so the
    // pivot coordinate is forced to the row's entry at f.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].get(f)) x.set(pivots_[i]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank(std::vector<BitVector> rows, std::size_t ncols) { return Echelon(std::move(rows), ncols).rank(); }

std::vector<BitVector> kernel_basis(std::vector<BitVector> functionals, std::size_t ncols) {
  return Echelon(std::move(functionals), ncols).nullspace();
}

}  // namespace treegrp::gf2
