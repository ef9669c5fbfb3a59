#include "treegrp/predicate.hpp"

#include <algorithm>
#include <stdexcept>

namespace treegrp {

gf2::BitVector level_functional(int depth, LevelSet levels) {
  gf2::BitVector f(vertex_count(depth));
  for (int j : levels.list()) {
    for (std::size_t i = level_offset(j); i < level_offset(j + 1); ++i) f.set(i);
  }
  return f;
}

namespace {

void append_level_stabilizer(std::vector<gf2::BitVector>& rows, int depth, int n) {
  for (std::size_t i = 0; i < vertex_count(n); ++i) {
    gf2::BitVector e(vertex_count(depth));
    e.set(i);
    rows.push_back(std::move(e));
  }
}

}  // namespace

PredicateSubgroup PredicateSubgroup::maximal(int depth, LevelSet levels) {
  check_depth(depth);
  if (levels.empty()) throw std::invalid_argument("P_J needs a nonempty level set J");
  if (levels.max_level() >= depth) {
    throw std::invalid_argument("J contains level " + std::to_string(levels.max_level()) +
                                " outside [0, " + std::to_string(depth - 1) + "]");
  }
  PredicateSubgroup p(Kind::PJ, depth);
  p.levels_ = levels;
  p.constraints_.push_back(level_functional(depth, levels));
  return p;
}

PredicateSubgroup PredicateSubgroup::m_v(int depth, std::vector<Vertex> vertices) {
  check_depth(depth);
  if (vertices.empty()) throw std::invalid_argument("M_V needs a nonempty vertex set V");
  for (const auto& v : vertices) {
    if (v.level() != depth - 1) {
      throw std::invalid_argument("vertex '" + v.str() + "' is not on level " + std::to_string(depth - 1));
    }
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  PredicateSubgroup p(Kind::MV, depth);
  p.vertices_ = std::move(vertices);
  append_level_stabilizer(p.constraints_, depth, depth - 1);
  gf2::BitVector f(vertex_count(depth));
  for (const auto& v : p.vertices_) f.set(v.heap_index());
  p.constraints_.push_back(std::move(f));
  return p;
}

PredicateSubgroup PredicateSubgroup::derived_of_full(int depth) {
  check_depth(depth);
  PredicateSubgroup p(Kind::DerivedOfGd, depth);
  for (int j = 0; j < depth; ++j) p.constraints_.push_back(level_functional(depth, LevelSet({j})));
  return p;
}

PredicateSubgroup PredicateSubgroup::level_stabilizer(int depth, int n) {
  check_depth(depth);
  if (n < 0 || n > depth) throw std::out_of_range("level stabilizer level out of range");
  PredicateSubgroup p(Kind::LevelStabilizer, depth);
  p.level_ = n;
  append_level_stabilizer(p.constraints_, depth, n);
  return p;
}

PredicateSubgroup PredicateSubgroup::intersection(const PredicateSubgroup& a, const PredicateSubgroup& b) {
  if (a.depth_ != b.depth_) throw std::invalid_argument("intersection: depth mismatch");
  PredicateSubgroup p(Kind::Intersection, a.depth_);
  p.constraints_ = a.constraints_;
  p.constraints_.insert(p.constraints_.end(), b.constraints_.begin(), b.constraints_.end());
  return p;
}

bool PredicateSubgroup::contains(const FiniteAutomorphism& g) const {
  if (g.depth() != depth_) throw std::invalid_argument("membership: depth mismatch");
  return std::none_of(constraints_.begin(), constraints_.end(),
                      [&](const gf2::BitVector& f) { return f.dot(g.words()); });
}

int PredicateSubgroup::log2_order() const {
  const std::size_t n = vertex_count(depth_);
  return static_cast<int>(n - gf2::rank(constraints_, n));
}

std::string PredicateSubgroup::describe() const {
  switch (kind_) {
    case Kind::PJ:
      return "P_J, J = " + levels_.str();
    case Kind::MV: {
      std::string s = "M_V, V = {";
      for (std::size_t i = 0; i < vertices_.size(); ++i) s += (i ? "," : "") + vertices_[i].str();
      return s + "}";
    }
    case Kind::DerivedOfGd:
      return "[G(d),G(d)]";
    case Kind::LevelStabilizer:
      return "G_" + std::to_string(level_) + "(d)";
    case Kind::Intersection:
      return "intersection";
  }
  return "?";
}

Parity beta_V(const FiniteAutomorphism& g, const std::vector<Vertex>& vertices) {
  Parity p;
  for (const auto& v : vertices) {
    if (v.level() >= g.depth()) throw std::out_of_range("beta_V: vertex below the labelled levels");
    p += Parity(g.label(v));
  }
  return p;
}

}  // namespace treegrp
