#pragma once

// Data-parallel enumeration kernels and their serial reference versions.
//
// Every parallel kernel returns exactly what its serial counterpart returns
// (sorted keys), independent of thread count and scheduling. The serial
// versions exist for tests and for the benchmark target.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "treegrp/errors.hpp"
#include "treegrp/packed.hpp"

namespace treegrp::kernels {

using packed::Key;

/// Sorted element keys of the subgroup of G(depth) generated by gens.
std::vector<Key> close_parallel(std::span<const Key> gens, int depth, std::size_t cap);
std::vector<Key> close_serial(std::span<const Key> gens, int depth, std::size_t cap);

/// Sorted keys of all g in G(depth) with keep(g). Requires |G(depth)| <= cap.
std::vector<Key> filter_parallel(int depth, const std::function<bool(Key)>& keep, std::size_t cap);
std::vector<Key> filter_serial(int depth, const std::function<bool(Key)>& keep, std::size_t cap);

/// Allowed patterns of a pattern group grouped by their top d-1 levels:
/// top key -> the level-(d-1) label blocks completing it.
class ExtensionTable {
 public:
  ExtensionTable(std::span<const Key> pattern_group, int pattern_depth);

  int pattern_depth() const { return depth_; }
  /// Empty span when no allowed pattern has this top.
  std::span<const Key> completions(Key top) const;

 private:
  int depth_;
  std::unordered_map<Key, std::vector<Key>> blocks_;
};

/// Given the sorted depth-(n-1) truncation group, returns the sorted depth-n
/// truncation group: every one-level extension all of whose size-d patterns
/// at level n-d are allowed. Requires n > pattern depth and n <= 6.
std::vector<Key> extend_parallel(std::span<const Key> lower, const ExtensionTable& table, int n,
                                 std::size_t cap);
std::vector<Key> extend_serial(std::span<const Key> lower, const ExtensionTable& table, int n,
                               std::size_t cap);

/// Brute-force reference: all g in G(n) whose size-d pattern at every vertex
/// of level <= n-d lies in the sorted pattern group.
std::vector<Key> truncation_filter_serial(std::span<const Key> pattern_group, int pattern_depth, int n,
                                          std::size_t cap);

/// Order of the depth-n truncation group without materializing it.
std::size_t count_extensions_total(std::span<const Key> lower, const ExtensionTable& table, int n);

struct SweepResult {
  std::size_t checked = 0;
  std::size_t failures = 0;
  /// Smallest failing index.
  std::optional<std::size_t> first;
};

/// Evaluates ok(i) for every i in [0, count) in parallel.
SweepResult sweep(std::size_t count, const std::function<bool(std::size_t)>& ok);

/// Number of OpenMP threads in use (1 without OpenMP).
int thread_count();

}  // namespace treegrp::kernels
