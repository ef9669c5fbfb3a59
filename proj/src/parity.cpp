#include "treegrp/parity.hpp"

#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "treegrp/errors.hpp"
#include "treegrp/kernels.hpp"
#include "treegrp/packed.hpp"

namespace treegrp {

JContext::JContext(int depth, LevelSet levels) : depth_(depth), levels_(levels) {
  check_depth(depth);
  if (levels.empty()) throw std::invalid_argument("J must be nonempty");
  if (levels.max_level() >= depth) {
    throw std::invalid_argument("J contains level " + std::to_string(levels.max_level()) + " outside [0, " +
                                std::to_string(depth - 1) + "]");
  }
}

JContext JContext::for_theorem(int depth, LevelSet levels) {
  JContext ctx(depth, levels);
  ctx.require_top_level();
  return ctx;
}

void JContext::require_top_level() const {
  if (depth_ < 2) throw std::invalid_argument("the parity argument needs d >= 2");
  if (!levels_.contains(depth_ - 1)) {
    throw std::invalid_argument("J = " + levels_.str() + " must contain d-1 = " + std::to_string(depth_ - 1));
  }
}

Parity N(const FiniteAutomorphism& g, const JContext& ctx, int i) {
  if (g.depth() != ctx.depth()) throw std::invalid_argument("N: depth mismatch");
  if (i != 0 && i != 1) throw std::invalid_argument("N: i must be 0 or 1");
  Parity p;
  for (int j : ctx.Jprime().list()) {
    // Level j splits into halves of 2^{j-1} vertices; the half starting with symbol i.
    const std::size_t half = std::size_t{1} << (j - 1);
    p += range_parity(g, level_offset(j) + static_cast<std::size_t>(i) * half, half);
  }
  return p;
}

HalfParities half_parities(const FiniteAutomorphism& g, const JContext& ctx) {
  return {N(g, ctx, 0), N(g, ctx, 1)};
}

const char* identity_name(NiIdentity id) {
  switch (id) {
    case NiIdentity::Product: return "product";
    case NiIdentity::Inverse: return "inverse";
    case NiIdentity::Commutator: return "commutator";
  }
  return "?";
}

namespace {

int shift(int i, Parity a) { return (i + a.value()) & 1; }

// First failing identity on (g, h), if any.
std::optional<NiCounterexample> check_pair(const FiniteAutomorphism& g, const FiniteAutomorphism& h,
                                           const JContext& ctx) {
  const auto ng = half_parities(g, ctx);
  const auto nh = half_parities(h, ctx);
  const Parity ag = root_activity(g);
  const Parity ah = root_activity(h);
  const auto prod = half_parities(compose(g, h), ctx);
  const auto inv = half_parities(invert(g), ctx);
  const auto comm = half_parities(commutator(g, h), ctx);
  for (int i = 0; i < 2; ++i) {
    NiCounterexample c;
    c.i = i;
    if (prod[i] != nh[i] + ng[shift(i, ah)]) {
      c.identity = NiIdentity::Product;
    } else if (inv[i] != ng[shift(i, ag)]) {
      c.identity = NiIdentity::Inverse;
    } else if (comm[i] != ng[i] + ng[shift(i, ah)] + nh[i] + nh[shift(i, ag)]) {
      c.identity = NiIdentity::Commutator;
    } else {
      continue;
    }
    c.g_hex = to_hex(g);
    c.h_hex = to_hex(h);
    return c;
  }
  return std::nullopt;
}

NiReport run_pairs(const JContext& ctx, std::size_t count,
                   const std::function<std::pair<FiniteAutomorphism, FiniteAutomorphism>(std::size_t)>& pair_at) {
  NiReport r;
  r.depth = ctx.depth();
  r.levels = ctx.J();
  const auto s = kernels::sweep(count, [&](std::size_t k) {
    const auto [g, h] = pair_at(k);
    return !check_pair(g, h, ctx).has_value();
  });
  r.pairs = s.checked;
  r.failures = s.failures;
  if (s.first) {
    const auto [g, h] = pair_at(*s.first);
    r.first = check_pair(g, h, ctx);
  }
  return r;
}

}  // namespace

NiReport verify_ni_identities(const JContext& ctx, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FiniteAutomorphism> gs;
  std::vector<FiniteAutomorphism> hs;
  gs.reserve(samples);
  hs.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    gs.push_back(FiniteAutomorphism::random(ctx.depth(), rng));
    hs.push_back(FiniteAutomorphism::random(ctx.depth(), rng));
  }
  return run_pairs(ctx, samples, [&](std::size_t k) { return std::pair{gs[k], hs[k]}; });
}

NiReport verify_ni_identities_exhaustive(const JContext& ctx) {
  const int d = ctx.depth();
  if (d > 3) throw ResourceError("exhaustive N_i check is limited to d <= 3");
  const std::size_t n = std::size_t{1} << vertex_count(d);
  std::vector<FiniteAutomorphism> all;
  all.reserve(n);
  for (packed::Key k = 0; k < n; ++k) all.push_back(packed::to_automorphism(k, d));
  return run_pairs(ctx, n * n, [&](std::size_t k) { return std::pair{all[k / n], all[k % n]}; });
}

bool in_PJ(const FiniteAutomorphism& g, const JContext& ctx) {
  if (g.depth() != ctx.depth()) throw std::invalid_argument("P_J membership: depth mismatch");
  return alpha_J(g, ctx.J()) == Parity();
}

namespace {

void require_member(const FiniteAutomorphism& g, const JContext& ctx, const char* name) {
  if (!in_PJ(g, ctx)) {
    throw std::invalid_argument(std::string(name) + " = " + to_hex(g) + " is not in P_" + ctx.J().str());
  }
  // alpha_{J'} + I_0 alpha_0 = alpha_J, with alpha_{J'} = N_0 + N_1 taken from the halves.
  const Parity split = N(g, ctx, 0) + N(g, ctx, 1) + ctx.I0() * root_activity(g);
  if (split != Parity()) throw std::logic_error("P_J member with alpha_J' + I_0 alpha_0 != 0");
}

}  // namespace

HalfParities commutator_parity(const FiniteAutomorphism& g, const FiniteAutomorphism& h, const JContext& ctx) {
  require_member(g, ctx, "g");
  require_member(h, ctx, "h");
  const auto direct = half_parities(commutator(g, h), ctx);
  const auto ng = half_parities(g, ctx);
  const auto nh = half_parities(h, ctx);
  const Parity ag = root_activity(g);
  const Parity ah = root_activity(h);
  HalfParities formula;
  for (int i = 0; i < 2; ++i) {
    const Parity v = ng[i] + ng[shift(i, ah)] + nh[i] + nh[shift(i, ag)];
    (i ? formula.n1 : formula.n0) = v;
  }
  if (direct != formula) {
    throw TheoremViolation("commutator parity: portrait value and identity disagree for g = " + to_hex(g) +
                           ", h = " + to_hex(h));
  }
  if (direct.n0 != Parity() || direct.n1 != Parity()) {
    throw TheoremViolation("commutator of P_J members with nonzero N_i: g = " + to_hex(g) + ", h = " + to_hex(h));
  }
  return direct;
}

const char* verdict_name(Verdict v) { return v == Verdict::NotInDerived ? "NOT_IN_DERIVED" : "INCONCLUSIVE"; }

std::string Certificate::functional_name() const {
  if (!functional) return "";
  return *functional ? "N1" : "N0";
}

Certificate derived_membership_certificate(const JContext& ctx, const FiniteAutomorphism& x) {
  require_member(x, ctx, "x");
  Certificate c;
  const auto n = half_parities(x, ctx);
  if (n.n0 != Parity()) {
    c.verdict = Verdict::NotInDerived;
    c.functional = 0;
  } else if (n.n1 != Parity()) {
    c.verdict = Verdict::NotInDerived;
    c.functional = 1;
  }
  return c;
}

HalfParities word_parities(std::span<const int> word, const JContext& ctx) {
  HalfParities out;
  Parity suffix;  // root activity of the letters to the right
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int j = *it;
    if (j < 0 || j >= ctx.depth()) {
      throw std::invalid_argument("generator index " + std::to_string(j) + " outside [0, " +
                                  std::to_string(ctx.depth() - 1) + "]");
    }
    if (ctx.Jprime().contains(j)) (suffix ? out.n1 : out.n0) += Parity(true);
    if (j == 0) suffix += Parity(true);
  }
  return out;
}

}  // namespace treegrp
