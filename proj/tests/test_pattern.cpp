#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "treegrp/errors.hpp"
#include "treegrp/pattern.hpp"

using namespace treegrp;
using packed::Key;

namespace {

PatternGroup essential_PJ(int d, LevelSet J) { return PatternGroup(enumerate_PJ(d, J), Essentiality::Yes); }

std::vector<LevelSet> top_level_sets(int d) {
  std::vector<LevelSet> out;
  for (std::uint32_t m = 1; m < (1u << d); ++m) {
    if (LevelSet(m).contains(d - 1)) out.emplace_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("essentiality") {
  for (int d = 2; d <= 4; ++d) {
    CHECK(is_essential(full_group(d)).essential);
    for (const auto J : top_level_sets(d)) CHECK(is_essential(enumerate_PJ(d, J)).essential);
  }
  const auto p0 = enumerate_PJ(2, LevelSet({0}));
  const auto rep = is_essential(p0);
  CHECK(!rep.essential);
  REQUIRE(rep.witness.has_value());
  CHECK(p0.contains(*rep.witness));
  // the section of the witness at the reported child is a root swap
  CHECK(section(*rep.witness, Vertex::parse(std::to_string(rep.child))).label(0) == 1);
  CHECK(rep.witness->label(0) == 0);
}

TEST_CASE("essential reduction") {
  const auto chain = reduction_chain(enumerate_PJ(2, LevelSet({0})));
  // one cut to the trivial group, then a step that confirms the fixpoint
  REQUIRE(chain.size() == 2);
  CHECK(chain[0].order() == 4);
  CHECK(chain[1].order() == 1);
  CHECK(reduction_chain(chain[1]).size() == 1);
  CHECK(essential_reduction(enumerate_PJ(2, LevelSet({0}))).group().order() == 1);
  for (int d = 2; d <= 4; ++d) {
    for (const auto J : top_level_sets(d)) {
      const auto p = enumerate_PJ(d, J);
      const auto r = essential_reduction(p);
      CHECK(r.group() == p);
      CHECK(r.essential() == Essentiality::Yes);
      CHECK(reduction_chain(p).size() == 1);
    }
  }
  // every subgroup of G(2) reduces to an essential subgroup
  for (const auto& s : all_subgroups(2)) {
    const auto r = essential_reduction(s);
    CHECK(r.group().verify_closed());
    CHECK(r.group().is_subset_of(s));
    CHECK(is_essential(r.group()).essential);
    CHECK(essential_reduction(r.group()).group() == r.group());
  }
  for (int d = 3; d <= 4; ++d) {
    for (std::uint32_t m = 1; m < (1u << (d - 1)); ++m) {
      const auto r = essential_reduction(enumerate_PJ(d, LevelSet(m)));
      CHECK(r.group().verify_closed());
      CHECK(is_essential(r.group()).essential);
    }
  }
}

TEST_CASE("reduction preserves truncation groups") {
  // G_P only sees the patterns that survive the reduction, so the raw filter
  // and the reduced truncation group agree on the extendable part: every
  // element of the reduced truncation group passes the raw filter, and the
  // reduced group's image one level up equals its own truncation.
  for (int d = 2; d <= 3; ++d) {
    for (std::uint32_t m = 1; m < (1u << d); ++m) {
      const auto p = enumerate_PJ(d, LevelSet(m));
      const auto r = essential_reduction(p);
      for (int n = d; n <= 3; ++n) {
        const auto raw = oracle::truncation_filter(p, n);
        const auto t = truncation_group(r, n).group;
        for (Key k : t.elements()) CHECK(std::binary_search(raw.begin(), raw.end(), k));
        const auto up = truncation_group(r, n + 1).group;
        CHECK(truncate_image(up, n) == t);
      }
    }
  }
}

TEST_CASE("hausdorff dimension") {
  for (int d = 2; d <= 4; ++d) {
    CHECK(hausdorff_dimension(PatternGroup(full_group(d), Essentiality::Yes)) == Rational(1));
    for (const auto J : top_level_sets(d)) {
      CHECK(hausdorff_dimension(essential_PJ(d, J)) == Rational((1 << (d - 1)) - 1, 1 << (d - 1)));
    }
  }
  CHECK(hausdorff_dimension(essential_PJ(2, LevelSet({1}))) == Rational(1, 2));
  CHECK(hausdorff_dimension(essential_PJ(4, LevelSet({3}))) == Rational(7, 8));
  CHECK_THROWS_AS(hausdorff_dimension(PatternGroup(enumerate_PJ(2, LevelSet({0})))), std::invalid_argument);
}

TEST_CASE("allowed dimensions, finiteness and transitivity over G(2)") {
  for (const auto& s : all_subgroups(2)) {
    const auto r = essential_reduction(s);
    CHECK(dimension_in_allowed_set(r));
    const auto dim = hausdorff_dimension(r);
    CHECK((dim == Rational(0) || dim == Rational(1, 2) || dim == Rational(1)));
    CHECK((dim == Rational(1)) == (r.group() == full_group(2)));
    CHECK((dim == Rational(0)) == is_finite(r));
    CHECK(is_level_transitive(r) == !is_finite(r));
  }
  const PatternGroup triv(EnumeratedSubgroup::trivial(3), Essentiality::Yes);
  CHECK(is_finite(triv));
  CHECK(!is_level_transitive(triv));
  CHECK(hausdorff_dimension(triv) == Rational(0));
  const PatternGroup full(full_group(3), Essentiality::Yes);
  CHECK(!is_finite(full));
  CHECK(is_level_transitive(full));
}

TEST_CASE("truncation groups") {
  for (int d = 2; d <= 3; ++d) {
    for (const auto J : top_level_sets(d)) {
      const auto p = essential_PJ(d, J);
      CHECK(truncation_group(p, d).group == p.group());
      const auto stab = level_stabilizer(p.group(), d - 1).order();
      std::size_t expect = p.group().order();
      for (int n = d; n <= d + 2 && vertex_count(n) <= 26; ++n) {
        const auto t = truncation_group(p, n);
        CHECK(t.depth == n);
        CHECK(t.pattern_depth == d);
        CHECK(t.group.order() == expect);
        CHECK(t.group.verify_closed());
        if (n > d) CHECK(truncate_image(t.group, n - 1) == truncation_group(p, n - 1).group);
        if (vertex_count(n) <= 15) {
          const auto raw = oracle::truncation_filter(p.group(), n);
          CHECK(std::vector<Key>(t.group.elements().begin(), t.group.elements().end()) == raw);
        }
        // each new level adds one free P_{d-1} block per vertex of level n-d+1
        for (std::size_t i = 0; i < (std::size_t{1} << (n - d + 1)); ++i) expect *= stab;
      }
    }
  }
  // P_{1} at d = 2: three subpattern tests leave 2^{7-3} elements of G(3)
  CHECK(truncation_group(essential_PJ(2, LevelSet({1})), 3).group.order() == 16);
  CHECK(oracle::truncation_filter(enumerate_PJ(2, LevelSet({1})), 3).size() == 16);
  CHECK_THROWS_AS(truncation_group(PatternGroup(enumerate_PJ(2, LevelSet({0}))), 3), std::invalid_argument);
  CHECK_THROWS(truncation_group(essential_PJ(2, LevelSet({1})), 1));
}

TEST_CASE("level groups and constrained groups") {
  const auto p = essential_PJ(3, LevelSet({2}));
  CHECK(level_group(p, 1) == truncate_image(p.group(), 1));
  CHECK(level_group(p, 2) == truncate_image(p.group(), 2));
  CHECK(level_group(p, 3) == p.group());
  CHECK(level_group(p, 4) == truncation_group(p, 4).group);
  CHECK(constrained_group(p.group(), 4) == truncation_group(p, 4).group);
  const auto raw = oracle::truncation_filter(enumerate_PJ(3, LevelSet({1})), 4);
  const auto c = constrained_group(enumerate_PJ(3, LevelSet({1})), 4);
  CHECK(std::vector<Key>(c.elements().begin(), c.elements().end()) == raw);
}

TEST_CASE("transitivity of P_J on levels 1..d+2") {
  for (int d = 2; d <= 3; ++d) {
    for (const auto J : top_level_sets(d)) {
      const auto p = essential_PJ(d, J);
      CHECK(!is_finite(p));
      // builds H(n) up to n = d + 2 and throws on a non-transitive level
      CHECK(is_level_transitive(p));
      if (d == 2) {
        const auto ev = transitivity_evidence(p, d + 2);
        CHECK(!ev.first_nontransitive.has_value());
        REQUIRE(ev.order_grows.has_value());
        CHECK(*ev.order_grows);
        REQUIRE(ev.levels.size() == 4);
        for (const auto& lv : ev.levels) {
          CHECK(lv.computed);
          CHECK(lv.transitive);
        }
      }
      for (int n = 1; n <= d + 1; ++n) CHECK(is_transitive_on_level(level_group(p, n), n));
    }
  }
  const auto ev = transitivity_evidence(PatternGroup(EnumeratedSubgroup::trivial(2), Essentiality::Yes), 3);
  REQUIRE(ev.first_nontransitive.has_value());
  CHECK(*ev.first_nontransitive == 1);
}

TEST_CASE("psi image index") {
  const auto r1 = psi_image_index(essential_PJ(2, LevelSet({1})));
  CHECK(r1.stabilized);
  CHECK(r1.index == 2);
  for (int d = 2; d <= 3; ++d) {
    const auto full = psi_image_index(PatternGroup(full_group(d), Essentiality::Yes));
    CHECK(full.stabilized);
    CHECK(full.index == 1);
    for (const auto J : top_level_sets(d)) {
      const auto p = essential_PJ(d, J);
      const auto r = psi_image_index(p);
      REQUIRE(r.stabilized);
      CHECK(r.index == 2);
      const auto stab = level_stabilizer(p.group(), d - 1).order();
      CHECK(2 * p.group().order() == stab * stab * r.index);
      for (const auto& st : r.steps) {
        CHECK(st.h_order * st.h_order == st.image_order * st.index);
      }
    }
  }
  // every essential subgroup of G(2): the relation holds with the stabilized index
  for (const auto& s : all_subgroups(2)) {
    const auto r = essential_reduction(s);
    if (is_finite(r)) continue;
    const auto res = psi_image_index(r);
    REQUIRE(res.stabilized);
    const auto stab = level_stabilizer(r.group(), 1).order();
    CHECK(2 * r.group().order() == stab * stab * res.index);
  }
}
