#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "treegrp/errors.hpp"
#include "treegrp/kernels.hpp"
#include "treegrp/subgroup.hpp"

using namespace treegrp;
using packed::Key;

TEST_CASE("packed arithmetic agrees with portraits") {
  std::mt19937_64 rng(17);
  for (int d = 1; d <= 6; ++d) {
    for (int k = 0; k < 2000; ++k) {
      const auto g = FiniteAutomorphism::random(d, rng);
      const auto h = FiniteAutomorphism::random(d, rng);
      const Key gk = packed::from_automorphism(g);
      const Key hk = packed::from_automorphism(h);
      CHECK(packed::compose(hk, gk, d) == packed::from_automorphism(compose(h, g)));
      CHECK(packed::invert(gk, d) == packed::from_automorphism(invert(g)));
      CHECK(packed::commutator(gk, hk, d) == packed::from_automorphism(commutator(g, h)));
      CHECK(packed::conjugate(hk, gk, d) == packed::from_automorphism(conjugate(h, g)));
      const int lvl = static_cast<int>(rng() % static_cast<std::uint64_t>(d + 1));
      const auto path = static_cast<std::uint32_t>(rng() & ((std::uint64_t{1} << lvl) - 1));
      CHECK(packed::apply_path(gk, lvl, path) == apply(g, Vertex(lvl, path)).path());
      if (lvl < d) {
        const int kk = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d - lvl));
        CHECK(packed::subpattern(gk, lvl, path, kk) ==
              packed::from_automorphism(subpattern(g, Vertex(lvl, path), kk)));
      }
    }
  }
  CHECK_THROWS(packed::check_packed_depth(7));
}

TEST_CASE("parallel and serial closure agree") {
  std::mt19937_64 rng(23);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Key> gens;
      const int ng = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < ng; ++k) gens.push_back(rng() & packed::prefix_mask(d));
      CHECK(kernels::close_parallel(gens, d, kDefaultEnumerationCap) ==
            kernels::close_serial(gens, d, kDefaultEnumerationCap));
      // Generator order does not matter.
      auto shuffled = gens;
      std::reverse(shuffled.begin(), shuffled.end());
      CHECK(kernels::close_parallel(shuffled, d, kDefaultEnumerationCap) ==
            kernels::close_parallel(gens, d, kDefaultEnumerationCap));
    }
  }
  std::vector<Key> all;
  for (int i = 0; i < 4; ++i) all.push_back(packed::generator(4, i));
  CHECK(kernels::close_parallel(all, 4, kDefaultEnumerationCap).size() == 32768);
  CHECK_THROWS_AS(kernels::close_parallel(all, 4, 1000), ResourceError);
  CHECK_THROWS_AS(kernels::close_serial(all, 4, 1000), ResourceError);
}

TEST_CASE("filter kernels agree") {
  auto keep = [](Key g) { return __builtin_popcountll(g) % 3 == 1; };
  for (int d = 1; d <= 4; ++d) {
    CHECK(kernels::filter_parallel(d, keep, kDefaultEnumerationCap) ==
          kernels::filter_serial(d, keep, kDefaultEnumerationCap));
  }
  CHECK_THROWS_AS(kernels::filter_parallel(5, keep, kDefaultEnumerationCap), ResourceError);
}

TEST_CASE("extension kernel matches the brute-force truncation filter") {
  for (int d = 2; d <= 3; ++d) {
    for (std::uint32_t m = 1; m < (1u << d); ++m) {
      const auto p = enumerate_PJ(d, LevelSet(m));
      const kernels::ExtensionTable table(p.elements(), d);
      std::vector<Key> cur(p.elements().begin(), p.elements().end());
      for (int n = d + 1; n <= std::min(5, d + 2); ++n) {
        if (n > 4) break;  // the unpacked oracle walks all of G(n)
        const auto par = kernels::extend_parallel(cur, table, n, kDefaultEnumerationCap);
        const auto ser = kernels::extend_serial(cur, table, n, kDefaultEnumerationCap);
        CHECK(par == ser);
        CHECK(par == kernels::truncation_filter_serial(p.elements(), d, n, kDefaultEnumerationCap));
        CHECK(par == oracle::truncation_filter(p, n));
        CHECK(kernels::count_extensions_total(cur, table, n) == par.size());
        cur = par;
      }
    }
  }
}

TEST_CASE("sweep reports the smallest failing index") {
  const auto r = kernels::sweep(1000, [](std::size_t i) { return i % 97 != 50; });
  CHECK(r.checked == 1000);
  CHECK(r.failures == 10);
  REQUIRE(r.first);
  CHECK(*r.first == 50);
  CHECK(!kernels::sweep(10, [](std::size_t) { return true; }).first);
  CHECK(kernels::thread_count() >= 1);
}
