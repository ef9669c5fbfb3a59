#include "treegrp/json_io.hpp"

namespace treegrp {

using nlohmann::json;

namespace {

json levels_json(LevelSet s) {
  json a = json::array();
  for (int j : s.list()) a.push_back(j);
  return a;
}

template <class T>
T field_as(const json& j, const char* name) {
  if (!j.contains(name)) throw InputError(name, "missing");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw InputError(name, "has the wrong type");
  }
}

}  // namespace

SubgroupSpec parse_subgroup_spec(const json& j) {
  if (!j.is_object()) throw InputError("<root>", "expected a JSON object");
  SubgroupSpec s;
  s.d = field_as<int>(j, "d");
  try {
    check_depth(s.d);
  } catch (const std::exception& e) {
    throw InputError("d", e.what());
  }
  s.kind = field_as<std::string>(j, "kind");
  if (j.contains("role")) {
    const auto role = field_as<std::string>(j, "role");
    if (role != "pattern_group") throw InputError("role", "unknown role '" + role + "'");
    s.pattern_group = true;
  }
  if (s.kind == "generated") {
    const auto gens = field_as<std::vector<std::string>>(j, "generators");
    for (std::size_t k = 0; k < gens.size(); ++k) {
      try {
        s.generators.push_back(from_hex(gens[k], s.d));
      } catch (const std::exception& e) {
        throw InputError("generators[" + std::to_string(k) + "]", e.what());
      }
    }
  } else if (s.kind == "PJ") {
    const auto levels = field_as<std::vector<int>>(j, "J");
    for (int l : levels) {
      if (l < 0 || l >= s.d) throw InputError("J", "level " + std::to_string(l) + " outside [0, d-1]");
    }
    s.J = LevelSet::from_list(levels);
    if (s.J.empty()) throw InputError("J", "must be nonempty");
  } else if (s.kind == "MV") {
    const auto words = field_as<std::vector<std::string>>(j, "V");
    if (words.empty()) throw InputError("V", "must be nonempty");
    for (std::size_t k = 0; k < words.size(); ++k) {
      Vertex v;
      try {
        v = Vertex::parse(words[k]);
      } catch (const std::exception& e) {
        throw InputError("V[" + std::to_string(k) + "]", e.what());
      }
      if (v.level() != s.d - 1) throw InputError("V[" + std::to_string(k) + "]", "vertex not on level d-1");
      s.V.push_back(v);
    }
  } else {
    throw InputError("kind", "expected generated, PJ or MV, got '" + s.kind + "'");
  }
  return s;
}

json to_json(const SubgroupSpec& s) {
  json j;
  j["d"] = s.d;
  j["kind"] = s.kind;
  json gens = json::array();
  for (const auto& g : s.generators) gens.push_back(to_hex(g));
  j["generators"] = gens;
  j["J"] = levels_json(s.J);
  json vs = json::array();
  for (const auto& v : s.V) vs.push_back(v.str());
  j["V"] = vs;
  if (s.pattern_group) j["role"] = "pattern_group";
  return j;
}

EnumeratedSubgroup materialize(const SubgroupSpec& s, std::size_t cap) {
  if (s.kind == "generated") return close(s.d, s.generators, cap);
  if (s.kind == "PJ") return with_generators(enumerate_PJ(s.d, s.J, cap), cap);
  return with_generators(enumerate_predicate(PredicateSubgroup::m_v(s.d, s.V), cap), cap);
}

json to_json(const Rational& r) { return {{"num", r.num()}, {"den", r.den()}}; }

json to_json(const Certificate& c) {
  json j;
  j["verdict"] = verdict_name(c.verdict);
  j["certificate"] = c.functional ? json(c.functional_name()) : json(nullptr);
  return j;
}

json to_json(const ClassificationRow& r) {
  json j;
  j["d"] = r.d;
  j["J"] = levels_json(r.J);
  j["essential"] = r.essential;
  j["contains_a_dminus1"] = r.contains_a_dminus1;
  j["contains_derived_of_Gd"] = r.contains_derived_of_Gd;
  j["log2_order"] = r.log2_order;
  j["dimension"] = to_json(r.dimension);
  j["is_max_dimension"] = r.is_max_dimension;
  j["bs_premise_fails"] = r.bs_premise_fails ? json(*r.bs_premise_fails) : json(nullptr);
  j["bs_method"] = r.bs_method;
  j["top_fg_verdict"] = r.top_fg_verdict;
  j["reduced"] = {
      {"log2_order", r.reduced_log2_order},
      {"log2_stabilizer_order", r.reduced_stabilizer_log2_order},
      {"is_maximal", r.reduced_is_maximal},
      {"contains_a_dminus1", r.reduced_contains_a_dminus1},
      {"proper_above_derived_of_Gd", r.reduced_proper_above_derived},
  };
  return j;
}

json to_json(const ClassificationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  return {{"d", r.d},
          {"method", r.method},
          {"max_dimension", to_json(r.max_dimension)},
          {"max_dimension_count", r.max_dimension_count},
          {"rows", rows}};
}

json to_json(const NiReport& r) {
  json j;
  j["d"] = r.depth;
  j["J"] = levels_json(r.levels);
  j["pairs"] = r.pairs;
  j["failures"] = r.failures;
  if (r.first) {
    j["counterexample"] = {{"identity", identity_name(r.first->identity)},
                           {"i", r.first->i},
                           {"g", r.first->g_hex},
                           {"h", r.first->h_hex}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

json to_json(const NoAdadReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    json j = to_json(c.certificate);
    j["J"] = levels_json(c.J);
    j["in_stabilizer"] = c.in_stabilizer;
    j["brute_force_run"] = c.brute_force_run;
    j["in_derived"] = c.brute_force_run ? json(c.in_derived) : json(nullptr);
    j["derived_order"] = c.brute_force_run ? json(c.derived_order) : json(nullptr);
    cases.push_back(j);
  }
  return {{"d", r.d}, {"cases", cases}};
}

json to_json(const TopFgReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"J", levels_json(c.J)},
                     {"in_stabilizer", c.in_stabilizer},
                     {"certificate", to_json(c.certificate)},
                     {"verdict", c.verdict}});
  }
  return {{"d", r.d},
          {"method", r.method},
          {"imported", "Bondarenko-Samoilovych condition: [P,P] not containing P_{d-1} rules out topological finite generation"},
          {"cases", cases}};
}

json to_json(const RelationReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"pattern_group", c.label},
                     {"maximal", c.maximal},
                     {"order", c.order},
                     {"stabilizer_order", c.stabilizer_order},
                     {"psi_index", c.psi_index},
                     {"index_by_depth", c.index_by_depth},
                     {"stabilized", c.stabilized},
                     {"linear_log2_index", c.linear_log2_index},
                     {"holds", c.holds}});
  }
  return {{"d", r.d}, {"complete", r.complete}, {"cases", cases}};
}

json to_json(const AuxReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"checked", c.checked},
                      {"failures", c.failures},
                      {"first_failure", c.failures ? json(c.first_failure) : json(nullptr)}});
  }
  return {{"d", r.d}, {"checks", checks}};
}

json to_json(const PsiIndexResult& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"n", s.n},
                     {"h_order", s.h_order},
                     {"stabilizer_order", s.stabilizer_order},
                     {"image_order", s.image_order},
                     {"index", s.index}});
  }
  return {{"stabilized", r.stabilized}, {"index", r.index}, {"steps", steps}};
}

}  // namespace treegrp
