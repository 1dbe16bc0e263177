#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ulm/errors.hpp"
#include "ulm/finite_poset.hpp"
#include "ulm/linear.hpp"
#include "ulm/module.hpp"
#include "ulm/oracle.hpp"

// Cross-checks of the height-based algorithms against the brute-force oracle.

namespace ulm {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string detail;  // counts on success, the first counterexample on failure
};

struct VerifyOptions {
  int n = 1;
  std::uint64_t bound = kDefaultBound;
  std::uint64_t full_pair_limit = 1000000;  // above this many pairs, sample
  std::size_t pair_samples = 10000;
  std::size_t construction_samples = 20;
  std::uint64_t seed = 1;
};

/// Shared, lazily computed data about all n-tuples of one shape.
class TupleData {
 public:
  TupleData(ModuleShape shape, int n, std::uint64_t bound);

  const ModuleShape& shape() const { return shape_; }
  int n() const { return n_; }
  std::uint64_t count() const { return count_; }
  ElementTuple tuple(std::uint64_t index) const { return tuple_at(shape_, n_, index); }

  const HeightTable& table(std::uint64_t index);
  const EndoSet& endomorphisms();
  const EndoSet& automorphisms();
  const OrbitPartition& brute_partition();
  const ReachabilityTable& reachability();
  /// Brute-force degeneration poset over brute orbits: leq(i, j) iff orbit j reaches orbit i.
  const FinitePoset<std::size_t>& brute_poset();

  /// All ordered pairs, or `samples` uniformly random ones when there are more than `full_limit`.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(std::uint64_t full_limit, std::size_t samples,
                                                             std::uint64_t seed) const;

 private:
  ModuleShape shape_;
  int n_;
  std::uint64_t bound_;
  std::uint64_t count_;
  std::vector<std::optional<HeightTable>> tables_;
  std::optional<EndoSet> endos_, autos_;
  std::optional<OrbitPartition> partition_;
  std::optional<ReachabilityTable> reach_;
  std::optional<FinitePoset<std::size_t>> brute_poset_;
};

/// Element orbits found by the oracle, labelled by the Ulm sequence of a representative.
FinitePoset<UlmSequence> brute_element_poset(const ModuleShape& shape, std::uint64_t bound = kDefaultBound);
/// Same, reusing the oracle data of single-element tuples.
FinitePoset<UlmSequence> brute_element_poset(TupleData& elements);
/// Element orbits from height tables, labelled the same way.
FinitePoset<UlmSequence> element_orbit_poset(const ModuleShape& shape, std::uint64_t bound = kDefaultBound);

SuiteResult check_barker(TupleData& data);
SuiteResult check_degeneration(TupleData& data, const VerifyOptions& opts);
SuiteResult check_mutual(TupleData& data, const VerifyOptions& opts);
SuiteResult check_dictionary(const ModuleShape& shape, std::uint64_t bound);
// These two take the n = 1 tuple data of the shape.
SuiteResult check_orbit_count(TupleData& elements, std::uint64_t bound);
SuiteResult check_element_poset(TupleData& elements, std::uint64_t bound);
SuiteResult check_atoms(TupleData& data);
SuiteResult check_n_invariant(TupleData& data, const VerifyOptions& opts);
SuiteResult check_depth(TupleData& data);
SuiteResult check_construction(TupleData& data, std::size_t samples, std::uint64_t seed);

/// Every suite above, in a fixed order.
std::vector<SuiteResult> run_verify(const ModuleShape& shape, const VerifyOptions& opts);

}  // namespace ulm
