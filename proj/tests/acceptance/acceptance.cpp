// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "treegrp/harness.hpp"
#include "treegrp/parity.hpp"
#include "treegrp/pattern.hpp"
#include "treegrp/subgroup.hpp"

using namespace treegrp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail.str("");
      detail << "failed: " << what;
    }
  }
};

// Criterion 1: classification counts, dimensions and membership facts.
void classification(Outcome& o) {
  const double limit[] = {5, 10, 120};
  for (int d = 2; d <= 4; ++d) {
    const auto t0 = Clock::now();
    const auto r = classify_maximal(d);
    const double t = seconds_since(t0);
    const Rational top((1 << (d - 1)) - 1, 1 << (d - 1));
    std::size_t n = 0;
    for (const auto& row : r.rows) {
      if (!row.is_max_dimension) continue;
      ++n;
      o.require(row.dimension == top, "dimension of P_" + row.J.str());
      o.require(row.essential && !row.contains_a_dminus1 && row.contains_derived_of_Gd,
                "membership facts of P_" + row.J.str());
    }
    o.require(n == (std::size_t{1} << (d - 1)) && r.max_dimension_count == n, "count at d=" + std::to_string(d));
    o.require(t < limit[d - 2], "classify d=" + std::to_string(d) + " took " + fmt(t));
    if (o.pass) o.detail << (d > 2 ? "; " : "") << "d=" << d << ": " << n << " at " << top << " in " << fmt(t);
  }
}

// Criterion 2: [a_0, a_{d-1}] in the stabilizer, outside [P_J, P_J].
void derived_exclusion(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t brute = 0;
  std::size_t cert = 0;
  for (int d = 2; d <= 8; ++d) {
    const auto r = verify_no_adad(d);
    o.require(r.cases.size() == (std::size_t{1} << (d - 1)), "case count at d=" + std::to_string(d));
    for (const auto& c : r.cases) {
      const std::string where = "d=" + std::to_string(d) + " J=" + c.J.str();
      o.require(c.in_stabilizer, "stabilizer membership " + where);
      o.require(c.certificate.verdict == Verdict::NotInDerived && c.certificate.functional == 0,
                "certificate " + where);
      if (d <= 4) {
        o.require(c.brute_force_run && !c.in_derived, "enumerated [P,P] " + where);
        ++brute;
      } else {
        ++cert;
      }
    }
  }
  const double t = seconds_since(t0);
  o.require(brute == 14, "enumerated arm covered " + std::to_string(brute) + " cases");
  o.require(t < 60, "took " + fmt(t));
  if (o.pass) o.detail << brute << " enumerated cases agree, " << cert << " certificate-only cases (d=5..8) in " << fmt(t);
}

// Criterion 3: |P_{d-1}| for the maximal-dimension cases.
void stabilizer_orders(Outcome& o) {
  std::size_t n = 0;
  for (int d = 2; d <= 4; ++d) {
    for (const auto J : level_sets(d, true)) {
      const auto st = level_stabilizer(enumerate_PJ(d, J), d - 1);
      o.require(st.order() == (std::size_t{1} << ((1 << (d - 1)) - 1)),
                "d=" + std::to_string(d) + " J=" + J.str() + " order " + std::to_string(st.order()));
      ++n;
    }
  }
  if (o.pass) o.detail << n << " cases: 2, 8, 128";
}

// Criterion 4: product, inverse and commutator identities for N_i.
void ni_identities(Outcome& o) {
  std::size_t pairs = 0;
  for (const auto J : {LevelSet({1, 2}), LevelSet({2})}) {
    const auto r = verify_ni_identities_exhaustive(JContext(3, J));
    o.require(r.ok() && r.pairs == 16384, "exhaustive d=3 J=" + J.str());
    pairs += r.pairs;
  }
  for (int d = 2; d <= 8; ++d) {
    const auto sets = d <= 4 ? level_sets(d, true) : std::vector<LevelSet>{LevelSet({d - 1}), LevelSet::all(d)};
    for (const auto J : sets) {
      const auto r = verify_ni_identities(JContext(d, J), 10000, 1000 + d);
      o.require(r.ok() && r.pairs == 10000, "random d=" + std::to_string(d) + " J=" + J.str());
      pairs += r.pairs;
    }
  }
  if (o.pass) o.detail << pairs << " pairs, 0 failures";
}

// Criterion 5: 2|P| = |P_{d-1}|^2 [HxH : H_1], index 2 for maximal P.
void index_relation(Outcome& o) {
  std::size_t n = 0;
  for (int d = 2; d <= 3; ++d) {
    const auto r = verify_new_relation(d);
    o.require(r.complete, "incomplete at d=" + std::to_string(d));
    for (const auto& c : r.cases) {
      const std::string where = "d=" + std::to_string(d) + " " + c.label;
      const auto& k = c.index_by_depth;
      o.require(c.stabilized && k.size() >= 2 && k[k.size() - 1] == k[k.size() - 2], "stabilization " + where);
      o.require(2 * c.order == c.stabilizer_order * c.stabilizer_order * c.psi_index, "relation " + where);
      if (c.maximal) o.require(c.psi_index == 2, "index " + where);
      o.require(c.holds, where);
      ++n;
    }
  }
  if (o.pass) o.detail << n << " cases (every J containing d-1 and G(d)), index 2 for every maximal P";
}

// Criterion 6: fast routines against brute-force oracles.
void oracle_equivalences(Outcome& o) {
  std::size_t subgroups = 0;
  for (const auto& s : all_subgroups(2)) {
    o.require(derived_subgroup(s) == oracle::derived_all_pairs(s), "derived subgroup on G(2)");
    ++subgroups;
  }
  o.require(subgroups == 10, "subgroups of G(2)");
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 50; ++k) {
    std::vector<FiniteAutomorphism> gens;
    const int m = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < m; ++i) gens.push_back(FiniteAutomorphism::random(3, rng));
    const auto s = close(3, gens);
    o.require(derived_subgroup(s) == oracle::derived_all_pairs(s), "derived subgroup of random subgroup #" + std::to_string(k));
  }
  for (int d = 2; d <= 3; ++d) {
    const auto dg = oracle::derived_all_pairs(full_group(d));
    for (packed::Key k = 0; k < (packed::Key{1} << vertex_count(d)); ++k) {
      o.require(in_derived_of_Gd(packed::to_automorphism(k, d)) == dg.contains_key(k), "parity membership d=" + std::to_string(d));
    }
  }
  const auto dg4 = derived_subgroup(full_group(4));
  for (int k = 0; k < 10000; ++k) {
    const auto g = FiniteAutomorphism::random(4, rng);
    o.require(in_derived_of_Gd(g) == dg4.contains(g), "parity membership d=4");
  }
  if (o.pass) o.detail << "10 + 50 derived subgroups, membership exhaustive d=2,3 and 10000 samples d=4";
}

// Criterion 7: allowed dimensions and the finite / transitive / dimension equivalence.
void possible_values(Outcome& o) {
  for (const auto& s : all_subgroups(2)) {
    const auto r = essential_reduction(s);
    const auto dim = hausdorff_dimension(r);
    o.require(dim == Rational(0) || dim == Rational(1, 2) || dim == Rational(1), "dimension " + dim.str());
    o.require((dim == Rational(0)) == is_finite(r), "dimension 0 iff finite");
    o.require((dim == Rational(1)) == (r.group() == full_group(2)), "dimension 1 only for G(2)");
  }
  for (int d = 2; d <= 4; ++d) {
    const auto rep = verify_auxiliary(d, 10000, 5);
    for (const auto& c : rep.checks) {
      o.require(c.failures == 0 && c.checked > 0, "d=" + std::to_string(d) + " " + c.name + " " + c.first_failure);
    }
    for (const auto J : level_sets(d, true)) {
      const PatternGroup p(enumerate_PJ(d, J), Essentiality::Yes);
      o.require(!is_finite(p) && Rational(0) < hausdorff_dimension(p), "maximal P_" + J.str());
    }
  }
  if (o.pass) o.detail << "10 subgroups of G(2), every P_J reduction for d=2..4";
}

// Criterion 8: performance.
void performance(Outcome& o) {
  auto t0 = Clock::now();
  const auto g4 = full_group(4);
  const double tc = seconds_since(t0);
  o.require(g4.order() == 32768, "|G(4)|");
  o.require(tc < 1, "closure of G(4) took " + fmt(tc));
  const auto p = enumerate_PJ(4, LevelSet({3}));
  t0 = Clock::now();
  const auto dp = derived_subgroup(p);
  const double td = seconds_since(t0);
  o.require(p.order() == 16384, "|P_J|");
  o.require(td < 30, "derived subgroup took " + fmt(td));
  if (o.pass) o.detail << "G(4) closure " << fmt(tc) << ", [P,P] of order " << dp.order() << " in " << fmt(td);
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"maximal-dimension classification", classification},
      {"commutator excluded from [P_J,P_J]", derived_exclusion},
      {"order of P_{d-1}", stabilizer_orders},
      {"N_i identities", ni_identities},
      {"index relation", index_relation},
      {"oracle equivalences", oracle_equivalences},
      {"possible dimension values", possible_values},
      {"performance", performance},
  };
  int failed = 0;
  int k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail.str("");
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d %s: %s (%s) [%s]\n", k, name, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(),
                fmt(seconds_since(t0)).c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
