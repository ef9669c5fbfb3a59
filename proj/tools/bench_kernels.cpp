// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "treegrp/kernels.hpp"
#include "treegrp/parity.hpp"
#include "treegrp/predicate.hpp"
#include "treegrp/subgroup.hpp"

using namespace treegrp;
using packed::Key;

namespace {

constexpr std::size_t kCap = std::size_t{1} << 26;

std::vector<Key> generators(int d) {
  std::vector<Key> g;
  for (int i = 0; i < d; ++i) g.push_back(packed::generator(d, i));
  return g;
}

void BM_close_parallel(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const auto gens = generators(d);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::close_parallel(gens, d, kCap));
}

void BM_close_serial(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const auto gens = generators(d);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::close_serial(gens, d, kCap));
}

bool keep_PJ(Key k) { return PredicateSubgroup::maximal(4, LevelSet({3})).contains(packed::to_automorphism(k, 4)); }

void BM_filter_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::filter_parallel(4, keep_PJ, kCap));
}

void BM_filter_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::filter_serial(4, keep_PJ, kCap));
}

// Depth-n truncation group of P_{2} in G(3): extension from depth n-1
// against filtering all of G(n).
std::vector<Key> pattern_keys() {
  const auto p = enumerate_PJ(3, LevelSet({2}));
  return {p.elements().begin(), p.elements().end()};
}

struct Truncation {
  std::vector<Key> pattern;
  kernels::ExtensionTable table;
  std::vector<Key> lower;
  explicit Truncation(int n)
      : pattern(pattern_keys()),
        table(pattern, 3),
        lower(n == 4 ? pattern : kernels::extend_serial(pattern, table, 4, kCap)) {}
};

void BM_extend_parallel(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Truncation t(n);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::extend_parallel(t.lower, t.table, n, kCap));
}

void BM_extend_serial(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Truncation t(n);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::extend_serial(t.lower, t.table, n, kCap));
}

void BM_truncation_filter_serial(benchmark::State& st) {
  const Truncation t(4);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::truncation_filter_serial(t.pattern, 3, 4, kCap));
}

void BM_derived_subgroup(benchmark::State& st) {
  const auto p = with_generators(enumerate_PJ(4, LevelSet({3})));
  for (auto _ : st) benchmark::DoNotOptimize(derived_subgroup(p));
}

void BM_ni_sweep(benchmark::State& st) {
  const JContext ctx(3, LevelSet({1, 2}));
  for (auto _ : st) benchmark::DoNotOptimize(verify_ni_identities_exhaustive(ctx));
}

}  // namespace

BENCHMARK(BM_close_parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_close_serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_filter_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_filter_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_extend_parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_extend_serial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_truncation_filter_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_derived_subgroup)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ni_sweep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
