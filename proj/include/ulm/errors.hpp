#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ulm {

// Default cap on any exhaustive enumeration (tuples, endomorphisms, ideals).
inline constexpr std::uint64_t kDefaultBound = std::uint64_t{1} << 20;

/// Malformed or inconsistent input: bad shape data, mismatched rings or
/// shapes, out-of-range coordinates.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured cap. Results are never sampled
/// silently in that case.
class BoundExceeded : public std::runtime_error {
 public:
  BoundExceeded(const std::string& what, std::uint64_t needed, std::uint64_t bound)
      : std::runtime_error(what + ": needs " + std::to_string(needed) +
                           ", bound is " + std::to_string(bound)),
        needed_(needed),
        bound_(bound) {}

  std::uint64_t needed() const { return needed_; }
  std::uint64_t bound() const { return bound_; }

 private:
  std::uint64_t needed_;
  std::uint64_t bound_;
};

inline void check_bound(const std::string& what, std::uint64_t needed, std::uint64_t bound) {
  if (needed > bound) throw BoundExceeded(what, needed, bound);
}

// Saturating power used for size checks; returns UINT64_MAX on overflow.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return UINT64_MAX;
    result *= base;
  }
  return result;
}

}  // namespace ulm
