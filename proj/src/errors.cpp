#include "treegrp/errors.hpp"

#include <cstdlib>
#include <string>

namespace treegrp {

std::size_t enumeration_cap_from_env() {
  const char* raw = std::getenv("TREEGRP_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultEnumerationCap;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(raw, &pos);
    if (pos != std::string(raw).size() || v == 0) return kDefaultEnumerationCap;
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    return kDefaultEnumerationCap;
  }
}

}  // namespace treegrp
