#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ulm/errors.hpp"
#include "ulm/finite_poset.hpp"
#include "ulm/hom.hpp"
#include "ulm/linear.hpp"
#include "ulm/module.hpp"

namespace ulm {

/// A coefficient vector r lying in M_h of the first tuple but not in M_h of
/// the second, i.e. height(sum r_i a_i) >= h > height(sum r_i b_i).
struct HeightObstruction {
  int height;
  CoeffVector coefficients;
};

class NotHeightIncreasing : public std::domain_error {
 public:
  explicit NotHeightIncreasing(HeightObstruction w)
      : std::domain_error("map is not height-increasing"), witness(std::move(w)) {}
  HeightObstruction witness;
};

class NotSameOrbit : public std::domain_error {
 public:
  explicit NotSameOrbit(HeightObstruction w)
      : std::domain_error("tuples are not in the same orbit"), witness(std::move(w)) {}
  HeightObstruction witness;
};

/// M_h(a) is contained in M_h(b) at every level: the tables of a -> b.
bool table_degenerates(const HeightTable& a, const HeightTable& b);

/// Barker: same orbit iff the height tables coincide.
bool same_orbit(const ModuleShape& shape, std::span<const Element> a, std::span<const Element> b);

bool degenerates(const ModuleShape& shape, std::span<const Element> a, std::span<const Element> b);
/// a in A degenerates to b in B; both shapes must share one ring.
bool degenerates(const ModuleShape& A, std::span<const Element> a, const ModuleShape& B,
                 std::span<const Element> b);

/// nullopt iff a -> b.
std::optional<HeightObstruction> degeneration_obstruction(const ModuleShape& A, std::span<const Element> a,
                                                          const ModuleShape& B, std::span<const Element> b);
/// nullopt iff a and b share an orbit; otherwise a vector whose combinations differ in height.
std::optional<HeightObstruction> orbit_obstruction(const ModuleShape& shape, std::span<const Element> a,
                                                   std::span<const Element> b);

/// N = sum_{h=0..k} log_q |M_h / p^k R^n|, in [0, nk(k+1)].
int n_invariant(const ModuleShape& shape, std::span<const Element> a);
int n_invariant(const HeightTable& table);

struct TupleOrbit {
  HeightTable fingerprint;
  ElementTuple representative;  // first tuple of the orbit in index order
  std::uint64_t size = 0;
};

/// Partition of all n-tuples by height table, in order of first appearance.
std::vector<TupleOrbit> enumerate_tuple_orbits(const ModuleShape& shape, int n,
                                               std::uint64_t bound = kDefaultBound,
                                               TableStrategy strategy = TableStrategy::Auto);

/// leq(i, j) iff orbit j degenerates to orbit i, so the zero orbit is the bottom.
FinitePoset<std::size_t> degeneration_poset(const std::vector<TupleOrbit>& orbits);

/// Longest strict chain of degenerations among n-tuple orbits (arrow count).
int chain_depth(const ModuleShape& shape, int n, std::uint64_t bound = kDefaultBound);

/// Ulm sequences of the element orbits that degenerate only to themselves and 0.
std::vector<UlmSequence> element_atoms(const ModuleShape& shape);

/// Atom orbits of n-tuples built as (c_1 a, ..., c_n a) for the canonical element
/// atom a with p a = 0 and c ranging over nonzero residue-field vectors.
std::vector<ElementTuple> tuple_atoms(const ModuleShape& shape, int n, std::uint64_t bound = kDefaultBound);
/// Atom orbits found by scanning the full degeneration poset.
std::vector<ElementTuple> exhaustive_tuple_atoms(const ModuleShape& shape, int n,
                                                 std::uint64_t bound = kDefaultBound);

/// A homomorphism A -> B with s_i -> t_i, extended one generator at a time.
/// Throws NotHeightIncreasing (with a witness) if s -> t fails the height test.
HomTable extend_homomorphism(const ModuleShape& A, const ModuleShape& B, std::span<const Element> s,
                             std::span<const Element> t);

/// An automorphism with a_i -> b_i, built back and forth over the canonical generators.
/// Throws NotSameOrbit if the tables differ.
HomTable build_automorphism(const ModuleShape& shape, std::span<const Element> a, std::span<const Element> b);

/// |span(gens)| = q^(nk - log_q |M_k(gens)|).
std::uint64_t submodule_size(const ModuleShape& shape, std::span<const Element> gens);
/// Elements of span(gens) sorted by index, by closure under x + c g and x -> p x.
std::vector<Element> submodule_elements(const ModuleShape& shape, std::span<const Element> gens,
                                        std::uint64_t bound = kDefaultBound);
/// A generating set of minimal size dim(S / pS).
ElementTuple minimal_generators(const ModuleShape& shape, std::span<const Element> gens,
                                std::uint64_t bound = kDefaultBound);

/// Some endomorphism maps span(S) onto span(T).
bool submodule_degenerates(const ModuleShape& shape, std::span<const Element> S, std::span<const Element> T,
                           std::uint64_t bound = kDefaultBound);
bool submodule_same_orbit(const ModuleShape& shape, std::span<const Element> S, std::span<const Element> T,
                          std::uint64_t bound = kDefaultBound);

/// Generators t of span(T) with minimal_generators(S) -> t (or in the same orbit when
/// `same_orbit` is set); nullopt if none exists.
std::optional<ElementTuple> submodule_image_generators(const ModuleShape& shape, std::span<const Element> S,
                                                       std::span<const Element> T, bool same_orbit,
                                                       std::uint64_t bound = kDefaultBound);
/// An automorphism carrying span(S) onto span(T), if one exists.
std::optional<HomTable> submodule_automorphism(const ModuleShape& shape, std::span<const Element> S,
                                               std::span<const Element> T, std::uint64_t bound = kDefaultBound);

}  // namespace ulm
