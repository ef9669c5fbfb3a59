// treegrp: element arithmetic in G(d), subgroup and pattern-group analysis,
// classification of maximal-dimension pattern groups and verification suites.
//
// Exit codes: 0 success, 1 a checked statement failed, 2 usage or malformed
// input, 3 enumeration cap or depth limit reached.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treegrp/harness.hpp"
#include "treegrp/json_io.hpp"
#include "treegrp/linear_pattern.hpp"
#include "treegrp/parity.hpp"
#include "treegrp/pattern.hpp"
#include "treegrp/subgroup.hpp"

using nlohmann::json;
using namespace treegrp;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kResource = 3 };

struct Global {
  std::string format = "text";
  bool no_timestamp = false;
  std::size_t cap = 0;  // 0: environment or default
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

class Output {
 public:
  explicit Output(const Global& g) : g_(g) {}
  bool json_mode() const { return g_.format == "json"; }
  std::ostringstream& text() { return text_; }
  void emit(const std::string& command, const json& config, const json& result) const {
    if (json_mode()) {
      json doc;
      doc["schema"] = 1;
      doc["command"] = command;
      doc["config"] = config;
      doc["result"] = result;
      if (!g_.no_timestamp) doc["timestamp"] = utc_now();
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << text_.str();
    }
  }

 private:
  const Global& g_;
  std::ostringstream text_;
};

FiniteAutomorphism hex_arg(const std::string& flag, const std::string& hex, int d) {
  try {
    return from_hex(hex, d);
  } catch (const ResourceError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(flag, e.what());
  }
}

Vertex word_arg(const std::string& flag, const std::string& word) {
  try {
    return Vertex::parse(word);
  } catch (const std::exception& e) {
    throw InputError(flag, e.what());
  }
}

LevelSet levels_arg(const std::string& flag, const std::vector<int>& levels, int d) {
  if (levels.empty()) throw InputError(flag, "needs at least one level");
  for (int l : levels) {
    if (l < 0 || l >= d) throw InputError(flag, "level " + std::to_string(l) + " outside [0, " + std::to_string(d - 1) + "]");
  }
  return LevelSet::from_list(levels);
}

void depth_arg(int d) {
  if (d < 1) throw InputError("--d", "depth must be at least 1");
  check_depth(d);
}

// ---- elem ----

struct ElemArgs {
  int d = 0;
  std::string lhs, rhs, g, h, w;
  std::vector<int> J;
  int i = 0;
};

int run_elem(const std::string& op, const ElemArgs& a, const Global& glob) {
  depth_arg(a.d);
  Output out(glob);
  json config = {{"op", op}, {"d", a.d}};
  json result;
  if (op == "compose" || op == "commutator") {
    const auto x = hex_arg("--lhs", a.lhs, a.d);
    const auto y = hex_arg("--rhs", a.rhs, a.d);
    config["lhs"] = a.lhs;
    config["rhs"] = a.rhs;
    result = to_hex(op == "compose" ? compose(x, y) : commutator(x, y));
  } else if (op == "invert") {
    config["g"] = a.g;
    result = to_hex(invert(hex_arg("--g", a.g, a.d)));
  } else if (op == "apply" || op == "section") {
    const auto g = hex_arg("--g", a.g, a.d);
    const auto w = word_arg("--w", a.w);
    config["g"] = a.g;
    config["w"] = a.w;
    if (op == "apply") {
      if (w.level() > a.d) throw InputError("--w", "word longer than the depth");
      result = apply(g, w).str();
    } else {
      if (w.level() >= a.d) throw InputError("--w", "section needs |w| < d");
      result = to_hex(section(g, w));
    }
  } else if (op == "alpha") {
    const auto g = hex_arg("--g", a.g, a.d);
    const auto J = levels_arg("--J", a.J, a.d);
    config["g"] = a.g;
    config["J"] = J.list();
    result = alpha_J(g, J).value();
  } else if (op == "distance") {
    const auto g = hex_arg("--g", a.g, a.d);
    const auto h = hex_arg("--h", a.h, a.d);
    config["g"] = a.g;
    config["h"] = a.h;
    const auto dist = distance(g, h);
    result = {{"distance", dist.str()},
              {"zero", dist.zero},
              {"agree_to_full_depth", dist.agree_to_full_depth},
              {"first_disagreement_level", dist.first_disagreement_level},
              {"log2_inverse", dist.log2_inverse}};
    out.text() << dist.str() << "\n";
  } else if (op == "gen") {
    if (a.i < 0 || a.i >= a.d) throw InputError("--i", "generator index outside [0, d-1]");
    config["i"] = a.i;
    result = to_hex(FiniteAutomorphism::generator(a.d, a.i));
  }
  if (op != "distance") {
    if (result.is_string()) {
      out.text() << result.get<std::string>() << "\n";
    } else {
      out.text() << result.dump() << "\n";
    }
  }
  out.emit("elem", config, result);
  return kOk;
}

// ---- classify ----

int run_classify(int d, bool gf2, std::size_t cap, const Global& glob) {
  if (d < 2) throw InputError("--d", "classify needs d >= 2");
  const auto rep = classify_maximal(d, ClassifyOptions{gf2, cap});
  Output out(glob);
  auto& t = out.text();
  t << "classification of P_J, d = " << d << " (" << rep.method << ")\n";
  for (const auto& r : rep.rows) {
    t << "  P_" << std::left << std::setw(12) << r.J.str() << (r.essential ? "essential    " : "reduces      ")
      << "dim " << std::setw(6) << r.dimension.str() << (r.is_max_dimension ? "max  " : "     ")
      << "a_{d-1} " << (r.contains_a_dminus1 ? "in " : "out") << "  BS premise fails: "
      << (r.bs_premise_fails ? (*r.bs_premise_fails ? "yes" : "no") : "n/a") << "  " << r.top_fg_verdict << "\n";
  }
  t << rep.max_dimension_count << " maximal-dimension pattern groups (dimension " << rep.max_dimension.str()
    << "), expected " << (std::size_t{1} << (d - 1)) << "\n";
  out.emit("classify", {{"d", d}, {"gf2", gf2}}, to_json(rep));
  return kOk;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite = "all";
  int d = 0;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

json verify_ni(const VerifyArgs& a, std::ostream& t, bool& ok) {
  std::vector<LevelSet> sets;
  if (a.d <= 4) {
    sets = level_sets(a.d, true);
  } else {
    sets = {LevelSet({a.d - 1}), LevelSet::all(a.d)};
  }
  json reports = json::array();
  for (LevelSet J : sets) {
    const JContext ctx(a.d, J);
    auto r = verify_ni_identities(ctx, a.samples, a.seed);
    t << "ni      d=" << a.d << " J=" << J.str() << " random pairs " << r.pairs << ", failures " << r.failures << "\n";
    ok = ok && r.ok();
    json entry = {{"mode", "random"}, {"seed", a.seed}, {"report", to_json(r)}};
    reports.push_back(entry);
    if (a.d <= 3) {
      auto e = verify_ni_identities_exhaustive(ctx);
      t << "ni      d=" << a.d << " J=" << J.str() << " exhaustive pairs " << e.pairs << ", failures " << e.failures
        << "\n";
      ok = ok && e.ok();
      reports.push_back({{"mode", "exhaustive"}, {"report", to_json(e)}});
    }
  }
  return reports;
}

int run_verify(const VerifyArgs& a, std::size_t cap, const Global& glob) {
  if (a.d < 2) throw InputError("--d", "verify needs d >= 2");
  static const std::vector<std::string> suites{"ni", "noadad", "topfg", "relation", "aux", "all"};
  if (std::find(suites.begin(), suites.end(), a.suite) == suites.end()) {
    throw InputError("--suite", "unknown suite '" + a.suite + "'");
  }
  check_depth(a.d);
  const bool all = a.suite == "all";
  Output out(glob);
  auto& t = out.text();
  json result;
  bool ok = true;
  if (all || a.suite == "ni") result["ni"] = verify_ni(a, t, ok);
  if (all || a.suite == "noadad") {
    if (a.d <= 8) {
      const auto r = verify_no_adad(a.d, cap);
      for (const auto& c : r.cases) {
        t << "noadad  d=" << a.d << " J=" << c.J.str() << " certificate " << verdict_name(c.certificate.verdict)
          << " via " << c.certificate.functional_name();
        if (c.brute_force_run) t << ", enumerated [P,P] of order " << c.derived_order << (c.in_derived ? " contains" : " excludes") << " [a_0,a_{d-1}]";
        t << "\n";
      }
      t << "noadad  " << r.cases.size() << " J-sets, arms agree\n";
      result["noadad"] = to_json(r);
    } else if (!all) {
      verify_no_adad(a.d, cap);
    }
  }
  if (all || a.suite == "topfg") {
    if (a.d <= 8) {
      const auto r = verify_not_top_fg(a.d, cap);
      for (const auto& c : r.cases) t << "topfg   d=" << a.d << " J=" << c.J.str() << " " << c.verdict << "\n";
      result["topfg"] = to_json(r);
    } else if (!all) {
      verify_not_top_fg(a.d, cap);
    }
  }
  if (all || a.suite == "relation") {
    if (a.d <= 3) {
      const auto r = verify_new_relation(a.d, cap);
      for (const auto& c : r.cases) {
        t << "relation d=" << a.d << " " << c.label << ": 2*" << c.order << " = " << c.stabilizer_order << "^2*"
          << c.psi_index << (c.stabilized ? "" : " (index not stabilized)") << (c.holds ? "  ok" : "  FAIL") << "\n";
      }
      ok = ok && r.complete;
      result["relation"] = to_json(r);
    } else if (!all) {
      verify_new_relation(a.d, cap);
    } else {
      t << "relation skipped: enumerated up to d = 3\n";
    }
  }
  if (all || a.suite == "aux") {
    if (a.d <= 4) {
      const auto r = verify_auxiliary(a.d, a.samples, a.seed, cap);
      for (const auto& c : r.checks) {
        t << "aux     " << c.name << ": " << c.checked << " checks, " << c.failures << " failures";
        if (c.failures) t << " (first: " << c.first_failure << ")";
        t << "\n";
      }
      ok = ok && r.ok();
      result["aux"] = to_json(r);
    } else if (!all) {
      verify_auxiliary(a.d, a.samples, a.seed, cap);
    } else {
      t << "aux skipped: enumerated up to d = 4\n";
    }
  }
  result["ok"] = ok;
  t << (ok ? "PASS" : "FAIL") << "\n";
  out.emit("verify", {{"suite", a.suite}, {"d", a.d}, {"samples", a.samples}, {"seed", a.seed}}, result);
  return ok ? kOk : kViolation;
}

// ---- analyze ----

int run_analyze(const std::string& path, std::size_t cap, const Global& glob) {
  std::ifstream in(path);
  if (!in) throw InputError("--file", "cannot open '" + path + "'");
  json input;
  try {
    in >> input;
  } catch (const json::exception& e) {
    throw InputError("--file", std::string("not valid JSON: ") + e.what());
  }
  const auto spec = parse_subgroup_spec(input);
  const auto s = materialize(spec, cap);
  const int d = spec.d;
  json res;
  res["order"] = s.order();
  res["log2_order"] = s.log2_order();
  json gens = json::array();
  for (const auto& g : s.generators()) gens.push_back(to_hex(g));
  res["generators"] = gens;
  const auto dgd = enumerate_predicate(PredicateSubgroup::derived_of_full(d), cap);
  res["contains_derived_of_Gd"] = dgd.is_subset_of(s);
  res["derived_order"] = derived_subgroup(s, cap).order();
  const auto ess = is_essential(s);
  res["essential"] = ess.essential;
  if (ess.witness) res["essential_witness"] = {{"g", to_hex(*ess.witness)}, {"child", ess.child}};
  const auto chain = reduction_chain(s);
  json orders = json::array();
  for (const auto& r : chain) orders.push_back(r.order());
  res["reduction_orders"] = orders;
  const PatternGroup red(chain.back(), Essentiality::Yes);
  const auto dim = hausdorff_dimension(red);
  res["dimension"] = to_json(dim);
  res["dimension_in_allowed_set"] = dimension_in_allowed_set(red);
  res["finite"] = is_finite(red);
  const auto ev = transitivity_evidence(red, d + 2, cap);
  json levels = json::array();
  for (const auto& le : ev.levels) {
    levels.push_back({{"level", le.level},
                      {"computed", le.computed},
                      {"transitive", le.computed ? json(le.transitive) : json(nullptr)},
                      {"order", le.computed ? json(le.order) : json(nullptr)}});
  }
  res["truncation_levels"] = levels;
  if (spec.pattern_group && d >= 2) res["psi_index"] = to_json(psi_image_index(red, cap));

  Output out(glob);
  auto& t = out.text();
  t << "subgroup of G(" << d << ") of order " << s.order() << " (" << spec.kind << ")\n";
  t << "  generators: " << gens.size() << "\n";
  t << "  contains [G(d),G(d)]: " << (res["contains_derived_of_Gd"].get<bool>() ? "yes" : "no") << "\n";
  t << "  [S,S] order: " << res["derived_order"].get<std::size_t>() << "\n";
  t << "  essential: " << (ess.essential ? "yes" : "no") << "\n";
  t << "  reduction orders:";
  for (const auto& r : chain) t << " " << r.order();
  t << "\n  Hausdorff dimension of G_P: " << dim << "\n";
  t << "  G_P " << (is_finite(red) ? "finite" : "infinite") << "\n";
  out.emit("analyze", {{"file", path}, {"input", input}}, res);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automorphisms of the binary rooted tree and finitely constrained pattern groups"};
  app.require_subcommand(1);
  Global glob;
  app.add_option("--format", glob.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--no-timestamp", glob.no_timestamp, "Omit the timestamp from JSON output");
  app.add_option("--cap", glob.cap, "Enumeration cap in elements (default: TREEGRP_CAP or 2^26)");

  auto* elem = app.add_subcommand("elem", "Element arithmetic on hex portraits");
  elem->require_subcommand(1);
  ElemArgs ea;
  std::string elem_op;
  auto add_elem = [&](const std::string& name, const std::string& help) {
    auto* c = elem->add_subcommand(name, help);
    c->add_option("--d", ea.d, "Depth")->required();
    c->callback([&elem_op, name] { elem_op = name; });
    return c;
  };
  for (const char* n : {"compose", "commutator"}) {
    auto* c = add_elem(n, std::string(n) == "compose" ? "Product lhs*rhs (rhs acts first)" : "[lhs, rhs]");
    c->add_option("--lhs", ea.lhs)->required();
    c->add_option("--rhs", ea.rhs)->required();
  }
  add_elem("invert", "Inverse")->add_option("--g", ea.g)->required();
  for (const char* n : {"apply", "section"}) {
    auto* c = add_elem(n, std::string(n) == "apply" ? "Image of a word" : "Section at a word");
    c->add_option("--g", ea.g)->required();
    c->add_option("--w", ea.w)->required();
  }
  {
    auto* c = add_elem("alpha", "Label parity over the levels in J");
    c->add_option("--g", ea.g)->required();
    c->add_option("--J", ea.J)->required()->delimiter(',');
  }
  {
    auto* c = add_elem("distance", "Ultrametric distance");
    c->set_help_flag("--help", "Print this help message and exit");
    c->add_option("--g", ea.g)->required();
    c->add_option("--h", ea.h)->required();
  }
  add_elem("gen", "Portrait of the generator a_i")->add_option("--i", ea.i)->required();

  auto* classify = app.add_subcommand("classify", "Classify the maximal subgroups P_J of G(d) as pattern groups");
  int cd = 0;
  bool gf2 = false;
  classify->add_option("--d", cd, "Pattern size")->required();
  classify->add_flag("--gf2", gf2, "Use the GF(2) rank route (needed for d = 5)");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  VerifyArgs va;
  verify->add_option("--suite", va.suite, "ni|noadad|topfg|relation|aux|all");
  verify->add_option("--d", va.d, "Depth")->required();
  verify->add_option("--samples", va.samples, "Random samples per check");
  verify->add_option("--seed", va.seed, "Random seed");

  auto* analyze = app.add_subcommand("analyze", "Analyze a subgroup or pattern group given as JSON");
  std::string file;
  analyze->add_option("--file", file, "Subgroup JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const std::size_t cap = glob.cap ? glob.cap : enumeration_cap_from_env();
    if (*elem) return run_elem(elem_op, ea, glob);
    if (*classify) return run_classify(cd, gf2, cap, glob);
    if (*verify) return run_verify(va, cap, glob);
    if (*analyze) return run_analyze(file, cap, glob);
  } catch (const TheoremViolation& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return kViolation;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const InputError& e) {
    std::cerr << "invalid input in " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
