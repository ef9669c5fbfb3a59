#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treegrp {

/// Raised when an operation would need to enumerate more elements than the
/// configured cap allows, or a depth beyond what a routine supports.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a checked mathematical statement fails on concrete data.
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration cap in elements. 2^26 unless overridden.
inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 26;

/// Cap taken from TREEGRP_CAP when set and parseable, else the default.
std::size_t enumeration_cap_from_env();

}  // namespace treegrp
