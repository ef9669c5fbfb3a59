#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "treegrp/errors.hpp"
#include "treegrp/predicate.hpp"
#include "treegrp/subgroup.hpp"

using namespace treegrp;
using packed::Key;

namespace {

FiniteAutomorphism a(int d, int i) { return FiniteAutomorphism::generator(d, i); }

EnumeratedSubgroup random_generated(int d, std::mt19937_64& rng) {
  std::vector<FiniteAutomorphism> gens;
  const int n = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < n; ++k) gens.push_back(FiniteAutomorphism::random(d, rng));
  return close(d, gens);
}

}  // namespace

TEST_CASE("closure") {
  CHECK(full_group(2).order() == 8);
  CHECK(full_group(3).order() == 128);
  CHECK(full_group(4).order() == 32768);
  CHECK(close(3, std::vector<FiniteAutomorphism>{}).order() == 1);
  CHECK(close(2, std::vector{a(2, 0)}).order() == 2);
  CHECK(full_group(3).verify_closed());
  std::mt19937_64 rng(31);
  for (int k = 0; k < 20; ++k) {
    const auto s = random_generated(3, rng);
    CHECK(s.verify_closed());
    CHECK((std::size_t{1} << s.log2_order()) == s.order());
    // idempotent
    CHECK(close_keys(3, std::vector<Key>(s.elements().begin(), s.elements().end())) == s);
    CHECK(close_keys(3, generating_set(s)) == s);
  }
  CHECK_THROWS_AS(full_group(5), ResourceError);
}

TEST_CASE("index") {
  const auto g2 = full_group(2);
  CHECK(index(g2, close(2, std::vector{a(2, 0)})) == 4);
  CHECK(index(g2, g2) == 1);
  CHECK(index(full_group(4), enumerate_PJ(4, LevelSet({3}))) == 2);
  CHECK_THROWS_AS(index(close(2, std::vector{a(2, 0)}), close(2, std::vector{a(2, 1)})), std::invalid_argument);
}

TEST_CASE("level stabilizers") {
  const auto g3 = full_group(3);
  CHECK(level_stabilizer(g3, 0) == g3);
  CHECK(level_stabilizer(g3, 3).order() == 1);
  for (int d = 2; d <= 4; ++d) {
    for (std::uint32_t m = 1; m < (1u << d); ++m) {
      if (!LevelSet(m).contains(d - 1)) continue;
      const auto p = enumerate_PJ(d, LevelSet(m));
      CHECK(level_stabilizer(p, d - 1).order() == (std::size_t{1} << ((1 << (d - 1)) - 1)));
    }
  }
}

TEST_CASE("derived subgroup: examples") {
  CHECK(derived_subgroup(close(2, std::vector{a(2, 0)})).order() == 1);
  CHECK(derived_subgroup(full_group(2)).order() == 2);
  for (int d = 2; d <= 4; ++d) {
    const auto g = full_group(d);
    CHECK(index(g, derived_subgroup(g)) == (std::size_t{1} << d));
  }
}

TEST_CASE("derived subgroup equals the all-pairs oracle") {
  const auto subs = all_subgroups(2);
  REQUIRE(subs.size() == 10);
  for (const auto& s : subs) CHECK(derived_subgroup(s) == oracle::derived_all_pairs(s));
  std::mt19937_64 rng(6);
  for (int k = 0; k < 50; ++k) {
    const auto s = random_generated(3, rng);
    CHECK(derived_subgroup(s) == oracle::derived_all_pairs(s));
    // generating sets found after the fact give the same answer
    const EnumeratedSubgroup bare(3, std::vector<Key>(s.elements().begin(), s.elements().end()), {}, false);
    CHECK(derived_subgroup(bare) == derived_subgroup(s));
  }
}

TEST_CASE("derived subgroup is normal with abelian quotient") {
  const auto check_all = [](const EnumeratedSubgroup& s) {
    const auto ds = derived_subgroup(s);
    const int d = s.depth();
    for (Key x : s.elements()) {
      for (Key y : s.elements()) {
        CHECK(ds.contains_key(packed::commutator(x, y, d)));
        if (x < 16) CHECK(ds.contains_key(packed::conjugate(y, x, d)) == ds.contains_key(y));
      }
    }
  };
  check_all(full_group(2));
  check_all(full_group(3));
  check_all(enumerate_PJ(3, LevelSet({1, 2})));
  const auto p = enumerate_PJ(4, LevelSet({3}));
  const auto dp = derived_subgroup(p);
  std::mt19937_64 rng(9);
  std::size_t bad = 0;
  for (int k = 0; k < 100000; ++k) {
    const Key x = p.elements()[rng() % p.order()];
    const Key y = p.elements()[rng() % p.order()];
    if (!dp.contains_key(packed::commutator(x, y, 4))) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("orbits and transitivity") {
  const auto triv = EnumeratedSubgroup::trivial(3);
  const auto o = orbit(triv, Vertex::parse("01"));
  REQUIRE(o.size() == 1);
  CHECK(o[0] == Vertex::parse("01"));
  for (int d = 1; d <= 4; ++d) {
    for (int n = 0; n <= d; ++n) CHECK(is_transitive_on_level(full_group(d), n));
  }
  CHECK(is_transitive_on_level(enumerate_PJ(3, LevelSet({2})), 2));
  CHECK(!is_transitive_on_level(close(2, std::vector{a(2, 1)}), 1));
  // orbit sizes divide the order
  for (const auto& s : all_subgroups(2)) {
    for (std::size_t i = 0; i < 7; ++i) {
      const auto sz = orbit(s, Vertex::from_heap_index(i)).size();
      CHECK(s.order() % sz == 0);
      // element scan and generator saturation agree
      const EnumeratedSubgroup bare(2, std::vector<Key>(s.elements().begin(), s.elements().end()), {}, false);
      CHECK(orbit(bare, Vertex::from_heap_index(i)) == orbit(s, Vertex::from_heap_index(i)));
    }
  }
}

TEST_CASE("maximal subgroups P_J") {
  for (int d = 2; d <= 4; ++d) {
    std::vector<EnumeratedSubgroup> seen;
    const auto g = full_group(d);
    const auto dg = derived_subgroup(g);
    for (std::uint32_t m = 1; m < (1u << d); ++m) {
      const LevelSet J(m);
      const auto pred = PredicateSubgroup::maximal(d, J);
      CHECK(pred.contains(FiniteAutomorphism::identity(d)));
      CHECK(pred.contains(a(d, d - 1)) == !J.contains(d - 1));
      CHECK(pred.log2_order() == static_cast<int>(vertex_count(d)) - 1);
      const auto p = enumerate_PJ(d, J);
      CHECK(p.order() == (std::size_t{1} << (vertex_count(d) - 1)));
      CHECK(index(g, p) == 2);
      CHECK(dg.is_subset_of(p));
      CHECK(p.verify_closed());
      for (Key k = 0; k < (Key{1} << vertex_count(d)); ++k) {
        CHECK(p.contains_key(k) == pred.contains(packed::to_automorphism(k, d)));
      }
      for (const auto& q : seen) CHECK(!(q == p));
      seen.push_back(p);
    }
    CHECK(seen.size() == (std::size_t{1} << d) - 1);
  }
  CHECK(enumerate_PJ(2, LevelSet({1})).order() == 4);
  CHECK(enumerate_PJ(4, LevelSet({3})).order() == 16384);
  CHECK_THROWS_AS(enumerate_PJ(5, LevelSet({4})), ResourceError);
  CHECK_THROWS_AS(PredicateSubgroup::maximal(3, LevelSet()), std::invalid_argument);
  CHECK_THROWS_AS(PredicateSubgroup::maximal(3, LevelSet({3})), std::invalid_argument);
}

TEST_CASE("M_V and beta_V") {
  const int d = 3;
  std::vector<Vertex> level2;
  for (std::uint32_t p = 0; p < 4; ++p) level2.emplace_back(2, p);
  CHECK(beta_V(FiniteAutomorphism::identity(d), level2) == Parity());
  // M_{X^{d-1}} = P_{d-1} inside the last-level stabilizer
  const auto mx = enumerate_predicate(PredicateSubgroup::m_v(d, level2));
  const auto p2 = level_stabilizer(enumerate_PJ(d, LevelSet({2})), 2);
  CHECK(mx == p2);
  const auto g3 = full_group(d);
  for (std::uint32_t mask = 1; mask < 16; ++mask) {
    std::vector<Vertex> V;
    for (std::uint32_t p = 0; p < 4; ++p) {
      if (mask >> p & 1u) V.emplace_back(2, p);
    }
    const auto mv = enumerate_predicate(PredicateSubgroup::m_v(d, V));
    CHECK(mv.order() == 8);
    for (Key gk : g3.elements()) {
      const auto g = packed::to_automorphism(gk, d);
      const auto gi = invert(g);
      std::vector<Vertex> W;
      for (const auto& v : V) W.push_back(apply(gi, v));
      const auto mw = enumerate_predicate(PredicateSubgroup::m_v(d, W));
      std::vector<Key> conj;
      for (Key h : mv.elements()) conj.push_back(packed::conjugate(h, gk, d));
      std::sort(conj.begin(), conj.end());
      CHECK(conj == std::vector<Key>(mw.elements().begin(), mw.elements().end()));
    }
  }
  CHECK_THROWS_AS(PredicateSubgroup::m_v(3, {Vertex::parse("0")}), std::invalid_argument);
  CHECK_THROWS_AS(PredicateSubgroup::m_v(3, {}), std::invalid_argument);
}

TEST_CASE("predicate and enumerated forms agree") {
  for (int d = 2; d <= 4; ++d) {
    const auto dg = derived_subgroup(full_group(d));
    const auto pd = PredicateSubgroup::derived_of_full(d);
    CHECK(enumerate_predicate(pd) == dg);
    CHECK(pd.log2_order() == dg.log2_order());
    for (int n = 0; n <= d; ++n) {
      const auto ls = PredicateSubgroup::level_stabilizer(d, n);
      CHECK(enumerate_predicate(ls) == level_stabilizer(full_group(d), n));
    }
    const auto both =
        PredicateSubgroup::intersection(PredicateSubgroup::maximal(d, LevelSet({d - 1})), PredicateSubgroup::level_stabilizer(d, 1));
    const auto e = enumerate_predicate(both);
    CHECK(e == level_stabilizer(enumerate_PJ(d, LevelSet({d - 1})), 1));
    CHECK(both.log2_order() == e.log2_order());
  }
}

TEST_CASE("conjugate label check") {
  const int d = 3;
  for (Key g = 0; g < 128; ++g) {
    for (Key h = 0; h < 16; ++h) {
      CHECK(conjugate_label_check(packed::to_automorphism(h << 3, d), packed::to_automorphism(g, d)));
    }
  }
  CHECK(conjugate_label_check(a(3, 2), FiniteAutomorphism::identity(3)));
  CHECK_THROWS_AS(conjugate_label_check(a(3, 1), a(3, 0)), std::invalid_argument);
  std::mt19937_64 rng(12);
  for (int dd = 5; dd <= 6; ++dd) {
    for (int k = 0; k < 10000; ++k) {
      const auto g = FiniteAutomorphism::random(dd, rng);
      std::vector<std::size_t> idx;
      for (std::size_t i = level_offset(dd - 1); i < level_offset(dd); ++i) {
        if (rng() & 1u) idx.push_back(i);
      }
      CHECK(conjugate_label_check(FiniteAutomorphism::from_labels(dd, idx), g));
    }
  }
}

TEST_CASE("in_derived_of_Gd matches the enumerated commutator subgroup") {
  for (int d = 2; d <= 6; ++d) {
    for (int i = 0; i < d; ++i) CHECK(!in_derived_of_Gd(a(d, i)));
    CHECK(in_derived_of_Gd(commutator(a(d, 0), a(d, d - 1))));
  }
  for (int d = 2; d <= 3; ++d) {
    const auto dg = oracle::derived_all_pairs(full_group(d));
    for (Key k = 0; k < (Key{1} << vertex_count(d)); ++k) {
      CHECK(in_derived_of_Gd(packed::to_automorphism(k, d)) == dg.contains_key(k));
    }
  }
  const auto dg4 = derived_subgroup(full_group(4));
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10000; ++k) {
    const auto g = FiniteAutomorphism::random(4, rng);
    CHECK(in_derived_of_Gd(g) == dg4.contains(g));
  }
}

TEST_CASE("all subgroups of G(2)") {
  const auto subs = all_subgroups(2);
  CHECK(subs.size() == 10);
  for (const auto& s : subs) CHECK(s.verify_closed());
  CHECK(subs.front().order() == 1);
  CHECK(subs.back().order() == 8);
  CHECK_THROWS(all_subgroups(3));
}
