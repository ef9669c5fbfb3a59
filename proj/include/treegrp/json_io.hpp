#pragma once

// JSON forms of subgroup descriptions and of the harness reports.

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "treegrp/harness.hpp"
#include "treegrp/parity.hpp"
#include "treegrp/pattern.hpp"
#include "treegrp/subgroup.hpp"

namespace treegrp {

/// Malformed input; field() names the offending JSON field or flag.
class InputError : public std::invalid_argument {
 public:
  InputError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// { "d", "kind": "generated" | "PJ" | "MV", "generators", "J", "V" } with an
/// optional "role": "pattern_group".
struct SubgroupSpec {
  int d = 0;
  std::string kind;
  std::vector<FiniteAutomorphism> generators;
  LevelSet J;
  std::vector<Vertex> V;
  bool pattern_group = false;
};

SubgroupSpec parse_subgroup_spec(const nlohmann::json& j);
nlohmann::json to_json(const SubgroupSpec& s);
EnumeratedSubgroup materialize(const SubgroupSpec& s, std::size_t cap = kDefaultEnumerationCap);

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const ClassificationRow& r);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const NiReport& r);
nlohmann::json to_json(const NoAdadReport& r);
nlohmann::json to_json(const TopFgReport& r);
nlohmann::json to_json(const RelationReport& r);
nlohmann::json to_json(const AuxReport& r);
nlohmann::json to_json(const PsiIndexResult& r);

}  // namespace treegrp
