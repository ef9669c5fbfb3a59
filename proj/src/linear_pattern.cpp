#include "treegrp/linear_pattern.hpp"

#include <stdexcept>

namespace treegrp {

namespace {

using gf2::BitVector;

// Moves a functional on a depth-k pattern onto the vertex root in a depth-n tree.
BitVector shift_functional(const BitVector& f, int k, const Vertex& root, int n) {
  BitVector out(vertex_count(n));
  for (std::size_t i = 0; i < vertex_count(k); ++i) {
    if (f.get(i)) out.set(concat(root, Vertex::from_heap_index(i)).heap_index());
  }
  return out;
}

// Pattern of size k at vertex root, read off a depth-n portrait vector.
BitVector restrict_to(const BitVector& x, const Vertex& root, int k) {
  BitVector out(vertex_count(k));
  for (std::size_t i = 0; i < vertex_count(k); ++i) {
    if (x.get(concat(root, Vertex::from_heap_index(i)).heap_index())) out.set(i);
  }
  return out;
}

BitVector unit(std::size_t width, std::size_t i) {
  BitVector e(width);
  e.set(i);
  return e;
}

int nullity(std::vector<BitVector> rows, std::size_t ncols) {
  return static_cast<int>(ncols - gf2::rank(std::move(rows), ncols));
}

}  // namespace

LinearPatternGroup::LinearPatternGroup(int depth, std::vector<gf2::BitVector> constraints)
    : depth_(depth), constraints_(std::move(constraints)) {
  check_depth(depth);
  for (const auto& c : constraints_) {
    if (c.size() != vertex_count(depth)) throw std::invalid_argument("constraint width mismatch");
  }
}

LinearPatternGroup LinearPatternGroup::from_predicate(const PredicateSubgroup& p) {
  return LinearPatternGroup(p.depth(), p.constraints());
}

LinearPatternGroup LinearPatternGroup::full(int depth) { return LinearPatternGroup(depth, {}); }

bool LinearPatternGroup::contains(const FiniteAutomorphism& g) const {
  if (g.depth() != depth_) throw std::invalid_argument("contains: depth mismatch");
  for (const auto& c : constraints_) {
    if (c.dot(g.words())) return false;
  }
  return true;
}

int LinearPatternGroup::log2_order() const { return nullity(constraints_, vertex_count(depth_)); }

int LinearPatternGroup::stabilizer_log2_order(int n) const {
  if (n < 0 || n > depth_) throw std::out_of_range("stabilizer level out of range");
  auto rows = constraints_;
  for (std::size_t i = 0; i < vertex_count(n); ++i) rows.push_back(unit(vertex_count(depth_), i));
  return nullity(std::move(rows), vertex_count(depth_));
}

std::vector<gf2::BitVector> LinearPatternGroup::basis() const {
  return gf2::kernel_basis(constraints_, vertex_count(depth_));
}

LinearPatternGroup LinearPatternGroup::truncate_image(int k) const {
  if (k < 1 || k > depth_) throw std::out_of_range("truncate_image: level out of range");
  if (k == depth_) return *this;
  std::vector<BitVector> image;
  for (const auto& b : basis()) image.push_back(restrict_to(b, Vertex(), k));
  // The annihilator of the image span cuts out the image.
  return LinearPatternGroup(k, gf2::kernel_basis(std::move(image), vertex_count(k)));
}

bool LinearPatternGroup::is_essential() const {
  if (depth_ < 2) return true;
  const auto top = truncate_image(depth_ - 1);
  for (const auto& b : basis()) {
    for (int i = 0; i < 2; ++i) {
      const auto child = restrict_to(b, Vertex(1, static_cast<std::uint32_t>(i)), depth_ - 1);
      for (const auto& c : top.constraints()) {
        if (c.dot(child)) return false;
      }
    }
  }
  return true;
}

LinearPatternGroup LinearPatternGroup::reduction_step() const {
  if (depth_ < 2) return *this;
  const auto top = truncate_image(depth_ - 1);
  auto rows = constraints_;
  for (int i = 0; i < 2; ++i) {
    for (const auto& c : top.constraints()) {
      rows.push_back(shift_functional(c, depth_ - 1, Vertex(1, static_cast<std::uint32_t>(i)), depth_));
    }
  }
  return LinearPatternGroup(depth_, std::move(rows));
}

LinearPatternGroup LinearPatternGroup::essential_reduction() const {
  LinearPatternGroup cur = *this;
  for (;;) {
    auto next = cur.reduction_step();
    if (next.log2_order() == cur.log2_order()) return cur;
    cur = std::move(next);
  }
}

Rational LinearPatternGroup::hausdorff_dimension() const {
  if (!is_essential()) throw std::invalid_argument("hausdorff_dimension needs an essential pattern group");
  return Rational(stabilizer_log2_order(depth_ - 1), std::int64_t{1} << (depth_ - 1));
}

bool LinearPatternGroup::contains_derived_of_Gd() const {
  std::vector<BitVector> levels;
  for (int j = 0; j < depth_; ++j) levels.push_back(level_functional(depth_, LevelSet({j})));
  const gf2::Echelon span(std::move(levels), vertex_count(depth_));
  for (const auto& c : constraints_) {
    if (!span.in_span(c)) return false;
  }
  return true;
}

std::vector<gf2::BitVector> LinearPatternGroup::level_group_constraints(int n) const {
  if (n < 1) throw std::out_of_range("truncation depth must be positive");
  if (n > kMaxDepth) throw std::out_of_range("truncation depth too large");
  if (n <= depth_) return truncate_image(n).constraints();
  std::vector<BitVector> rows;
  for (int m = 0; m <= n - depth_; ++m) {
    for (std::uint32_t p = 0; p < (1u << m); ++p) {
      for (const auto& c : constraints_) rows.push_back(shift_functional(c, depth_, Vertex(m, p), n));
    }
  }
  return rows;
}

int LinearPatternGroup::truncation_log2_order(int n) const {
  return nullity(level_group_constraints(n), vertex_count(n));
}

bool LinearPatternGroup::truncation_transitive(int n) const {
  // The image of 0^n is read off the labels along the path 0^n, so the orbit
  // is the projection of the subspace onto those n coordinates.
  auto rows = level_group_constraints(n);
  const int dim = nullity(rows, vertex_count(n));
  for (int j = 0; j < n; ++j) rows.push_back(unit(vertex_count(n), level_offset(j)));
  const int fixing_path = nullity(std::move(rows), vertex_count(n));
  return dim - fixing_path == n;
}

int LinearPatternGroup::psi_log2_index(int n) const {
  if (n < depth_ - 1 || n < 1) throw std::out_of_range("psi index needs n >= d - 1");
  const int h = truncation_log2_order(n);
  auto rows = level_group_constraints(n + 1);
  rows.push_back(unit(vertex_count(n + 1), 0));
  // psi is injective on the first-level stabilizer.
  const int stab = nullity(std::move(rows), vertex_count(n + 1));
  return 2 * h - stab;
}

}  // namespace treegrp
