#include "treegrp/kernels.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treegrp::kernels {

namespace {

void throw_cap(std::size_t cap, const std::string& what) {
  throw ResourceError(what + " exceeds the enumeration cap of " + std::to_string(cap) +
                      " elements (set TREEGRP_CAP to raise it)");
}

std::size_t group_size_or_cap(int depth, std::size_t cap) {
  const std::size_t bits = vertex_count(depth);
  if (bits >= 63 || (std::size_t{1} << bits) > cap) {
    throw_cap(cap, "enumerating G(" + std::to_string(depth) + ")");
  }
  return std::size_t{1} << bits;
}

// Membership structure for closure: dense bitmap while the portrait has at
// most 24 bits, hash set beyond.
class KeySet {
 public:
  explicit KeySet(int depth) {
    if (vertex_count(depth) <= 24) dense_.assign((std::size_t{1} << vertex_count(depth)) / 64 + 1, 0);
  }
  bool contains(Key k) const {
    if (!dense_.empty()) return (dense_[k >> 6] >> (k & 63)) & 1u;
    return sparse_.count(k) != 0;
  }
  bool insert(Key k) {
    if (!dense_.empty()) {
      const Key m = Key{1} << (k & 63);
      if (dense_[k >> 6] & m) return false;
      dense_[k >> 6] |= m;
      return true;
    }
    return sparse_.insert(k).second;
  }

 private:
  std::vector<std::uint64_t> dense_;
  std::unordered_set<Key> sparse_;
};

void check_gens(std::span<const Key> gens, int depth) {
  packed::check_packed_depth(depth);
  const Key mask = packed::prefix_mask(depth);
  for (Key g : gens) {
    if (g & ~mask) throw std::invalid_argument("generator has labels beyond its depth");
  }
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---- closure ----

std::vector<Key> close_parallel(std::span<const Key> gens, int depth, std::size_t cap) {
  check_gens(gens, depth);
  std::vector<Key> distinct(gens.begin(), gens.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::erase(distinct, Key{0});

  KeySet seen(depth);
  seen.insert(0);
  std::vector<Key> all{0};
  std::vector<Key> frontier{0};
  constexpr std::size_t kChunk = std::size_t{1} << 18;
  const std::size_t ng = distinct.size();

  while (!frontier.empty() && ng > 0) {
    std::vector<Key> next;
    for (std::size_t start = 0; start < frontier.size(); start += kChunk) {
      const std::size_t len = std::min(kChunk, frontier.size() - start);
      std::vector<Key> cand(len * ng);
      std::vector<std::uint8_t> fresh(len * ng, 0);
      const auto slen = static_cast<std::ptrdiff_t>(len);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < slen; ++i) {
        const Key x = frontier[start + static_cast<std::size_t>(i)];
        for (std::size_t s = 0; s < ng; ++s) {
          const Key y = packed::compose(x, distinct[s], depth);
          cand[static_cast<std::size_t>(i) * ng + s] = y;
          fresh[static_cast<std::size_t>(i) * ng + s] = seen.contains(y) ? 0 : 1;
        }
      }
      for (std::size_t k = 0; k < cand.size(); ++k) {
        if (fresh[k] && seen.insert(cand[k])) {
          next.push_back(cand[k]);
          all.push_back(cand[k]);
          if (all.size() > cap) throw_cap(cap, "subgroup closure");
        }
      }
    }
    frontier.swap(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Key> close_serial(std::span<const Key> gens, int depth, std::size_t cap) {
  check_gens(gens, depth);
  std::set<Key> seen{0};
  std::queue<Key> todo;
  todo.push(0);
  while (!todo.empty()) {
    const Key x = todo.front();
    todo.pop();
    for (Key s : gens) {
      const Key y = packed::compose(x, s, depth);
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw_cap(cap, "subgroup closure");
        todo.push(y);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

// ---- filtering ----

std::vector<Key> filter_parallel(int depth, const std::function<bool(Key)>& keep, std::size_t cap) {
  packed::check_packed_depth(depth);
  const std::size_t total = group_size_or_cap(depth, cap);
  const int nt = thread_count();
  std::vector<std::vector<Key>> parts(static_cast<std::size_t>(nt));
  // Static contiguous blocks per thread keep each part sorted; concatenating
  // parts in thread order keeps the result sorted.
#pragma omp parallel num_threads(nt)
  {
#ifdef _OPENMP
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
#else
    const std::size_t t = 0;
#endif
    const std::size_t per = (total + static_cast<std::size_t>(nt) - 1) / static_cast<std::size_t>(nt);
    const std::size_t lo = std::min(total, t * per);
    const std::size_t hi = std::min(total, lo + per);
    auto& out = parts[t];
    for (std::size_t k = lo; k < hi; ++k) {
      if (keep(k)) out.push_back(k);
    }
  }
  std::vector<Key> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

std::vector<Key> filter_serial(int depth, const std::function<bool(Key)>& keep, std::size_t cap) {
  packed::check_packed_depth(depth);
  const std::size_t total = group_size_or_cap(depth, cap);
  std::vector<Key> out;
  for (std::size_t k = 0; k < total; ++k) {
    if (keep(k)) out.push_back(k);
  }
  return out;
}

// ---- truncation groups ----

ExtensionTable::ExtensionTable(std::span<const Key> pattern_group, int pattern_depth) : depth_(pattern_depth) {
  packed::check_packed_depth(pattern_depth);
  const std::size_t top_bits = vertex_count(pattern_depth - 1);
  for (Key p : pattern_group) {
    blocks_[p & packed::low_bits(top_bits)].push_back(p >> top_bits);
  }
  for (auto& [top, list] : blocks_) std::sort(list.begin(), list.end());
}

std::span<const Key> ExtensionTable::completions(Key top) const {
  auto it = blocks_.find(top);
  if (it == blocks_.end()) return {};
  return it->second;
}

namespace {

void check_extension_args(const ExtensionTable& table, int n) {
  if (n <= table.pattern_depth() || n > packed::kMaxPackedDepth) {
    throw std::invalid_argument("extension to depth " + std::to_string(n) + " needs pattern depth < n <= 6");
  }
}

// Calls emit(key) for every depth-n extension of h, in increasing key order
// of the mixed-radix counter (block for the highest vertex varies slowest).
template <class Emit>
std::size_t for_each_extension(Key h, const ExtensionTable& table, int n, Emit&& emit) {
  const int d = table.pattern_depth();
  const int m = n - d;  // level of the pattern roots
  const std::size_t roots = std::size_t{1} << m;
  const std::size_t block_width = std::size_t{1} << (d - 1);
  std::vector<std::span<const Key>> choice(roots);
  std::size_t total = 1;
  for (std::size_t p = 0; p < roots; ++p) {
    choice[p] = table.completions(packed::subpattern(h, m, static_cast<std::uint32_t>(p), d - 1));
    total *= choice[p].size();
    if (total == 0) return 0;
  }
  const std::size_t base = level_offset(n - 1);
  std::vector<std::size_t> idx(roots, 0);
  for (std::size_t c = 0; c < total; ++c) {
    Key level = 0;
    for (std::size_t p = 0; p < roots; ++p) level |= choice[p][idx[p]] << (p * block_width);
    emit(h | (level << base));
    for (std::size_t p = 0; p < roots; ++p) {
      if (++idx[p] < choice[p].size()) break;
      idx[p] = 0;
    }
  }
  return total;
}

std::size_t count_extensions(Key h, const ExtensionTable& table, int n) {
  const int d = table.pattern_depth();
  const int m = n - d;
  std::size_t total = 1;
  for (std::size_t p = 0; p < (std::size_t{1} << m); ++p) {
    total *= table.completions(packed::subpattern(h, m, static_cast<std::uint32_t>(p), d - 1)).size();
    if (total == 0) break;
  }
  return total;
}

}  // namespace

std::vector<Key> extend_parallel(std::span<const Key> lower, const ExtensionTable& table, int n, std::size_t cap) {
  check_extension_args(table, n);
  const auto count = static_cast<std::ptrdiff_t>(lower.size());
  std::vector<std::size_t> offsets(lower.size() + 1, 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    offsets[static_cast<std::size_t>(i) + 1] = count_extensions(lower[static_cast<std::size_t>(i)], table, n);
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    offsets[i + 1] += offsets[i];
    if (offsets[i + 1] > cap) throw_cap(cap, "truncation group at depth " + std::to_string(n));
  }
  std::vector<Key> out(offsets.back());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    std::size_t pos = offsets[static_cast<std::size_t>(i)];
    for_each_extension(lower[static_cast<std::size_t>(i)], table, n, [&](Key k) { out[pos++] = k; });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Key> extend_serial(std::span<const Key> lower, const ExtensionTable& table, int n, std::size_t cap) {
  check_extension_args(table, n);
  std::vector<Key> out;
  for (Key h : lower) {
    for_each_extension(h, table, n, [&](Key k) {
      out.push_back(k);
      if (out.size() > cap) throw_cap(cap, "truncation group at depth " + std::to_string(n));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Key> truncation_filter_serial(std::span<const Key> pattern_group, int pattern_depth, int n,
                                          std::size_t cap) {
  if (n < pattern_depth) throw std::invalid_argument("truncation depth below pattern depth");
  std::vector<Key> sorted(pattern_group.begin(), pattern_group.end());
  std::sort(sorted.begin(), sorted.end());
  return filter_serial(
      n,
      [&](Key g) {
        for (int lvl = 0; lvl <= n - pattern_depth; ++lvl) {
          for (std::uint32_t p = 0; p < (1u << lvl); ++p) {
            if (!std::binary_search(sorted.begin(), sorted.end(), packed::subpattern(g, lvl, p, pattern_depth))) {
              return false;
            }
          }
        }
        return true;
      },
      cap);
}

std::size_t count_extensions_total(std::span<const Key> lower, const ExtensionTable& table, int n) {
  check_extension_args(table, n);
  std::size_t total = 0;
  const auto count = static_cast<std::ptrdiff_t>(lower.size());
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::ptrdiff_t i = 0; i < count; ++i) total += count_extensions(lower[static_cast<std::size_t>(i)], table, n);
  return total;
}

// ---- sweeps ----

SweepResult sweep(std::size_t count, const std::function<bool(std::size_t)>& ok) {
  std::size_t first = count;
  std::size_t failures = 0;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 256) reduction(min : first) reduction(+ : failures)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (!ok(u)) {
      ++failures;
      if (u < first) first = u;
    }
  }
  SweepResult r;
  r.checked = count;
  r.failures = failures;
  if (first != count) r.first = first;
  return r;
}

}  // namespace treegrp::kernels
