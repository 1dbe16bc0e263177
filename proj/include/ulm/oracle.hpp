#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ulm/errors.hpp"
#include "ulm/hom.hpp"
#include "ulm/module.hpp"

// Brute-force ground truth. Nothing here uses heights or height tables: maps
// are enumerated from generator images and applied directly.

namespace ulm {

struct EndoSet {
  ModuleShape shape;
  std::vector<HomTable> maps;
  std::uint64_t endomorphism_count = 0;
  std::uint64_t automorphism_count = 0;
};

/// prod_f |A[p^alpha_f]|; saturates.
std::uint64_t endomorphism_count(const ModuleShape& shape);

/// Every endomorphism, images chosen in element-index order (factor 0 varies fastest).
EndoSet enumerate_endomorphisms(const ModuleShape& shape, std::uint64_t bound = kDefaultBound);
/// The bijective endomorphisms, checked by counting distinct images.
EndoSet enumerate_automorphisms(const ModuleShape& shape, std::uint64_t bound = kDefaultBound);
/// The bijective members of an already enumerated set, same check as above.
EndoSet automorphisms_of(const EndoSet& endomorphisms);

struct OrbitPartition {
  std::vector<std::uint32_t> orbit_of;                // tuple index -> orbit id
  std::vector<std::vector<std::uint64_t>> orbits;     // sorted tuple indices, by smallest member
};

/// Orbits of the diagonal action of Aut(A) on A^n.
OrbitPartition brute_orbits(const ModuleShape& shape, int n, std::uint64_t bound = kDefaultBound);
OrbitPartition brute_orbits(const EndoSet& automorphisms, int n, std::uint64_t bound = kDefaultBound);

/// Some enumerated endomorphism maps a_i to b_i for every i.
bool brute_degenerates(const ModuleShape& shape, std::span<const Element> a, std::span<const Element> b,
                       std::uint64_t bound = kDefaultBound);
bool brute_degenerates(const EndoSet& endomorphisms, std::span<const Element> a, std::span<const Element> b);

/// For each tuple index of A^n, the sorted set of tuple indices reachable by
/// endomorphisms.
class ReachabilityTable {
 public:
  ReachabilityTable(const EndoSet& endomorphisms, int n, std::uint64_t bound = kDefaultBound);
  bool reaches(std::uint64_t from, std::uint64_t to) const;
  const std::vector<std::uint64_t>& targets(std::uint64_t from) const { return images_.at(from); }
  std::uint64_t tuple_count() const { return count_; }

 private:
  std::uint64_t count_ = 0;
  std::vector<std::vector<std::uint64_t>> images_;
};

}  // namespace ulm
