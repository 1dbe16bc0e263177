#include "ulm/orbits.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ulm/posets.hpp"

namespace ulm {

namespace {

void check_same_length(std::span<const Element> a, std::span<const Element> b) {
  if (a.size() != b.size())
    throw InvalidInput("tuple length mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

// Tables used inside search loops: the kernel route keeps long tuples cheap.
HeightTable search_table(const ModuleShape& shape, std::span<const Element> tuple, int precision) {
  return height_table(shape, tuple, precision, TableStrategy::Kernel);
}

std::optional<HeightObstruction> first_non_inclusion(const HeightTable& a, const HeightTable& b) {
  for (std::size_t h = 0; h < a.levels.size(); ++h)
    for (const auto& row : a.levels[h].rows())
      if (!membership(b.levels[h], row)) return HeightObstruction{static_cast<int>(h), row};
  return std::nullopt;
}

}  // namespace

bool table_degenerates(const HeightTable& a, const HeightTable& b) {
  if (a.levels.size() != b.levels.size()) throw InvalidInput("height tables at different precisions");
  for (std::size_t h = 0; h < a.levels.size(); ++h)
    if (!includes(b.levels[h], a.levels[h])) return false;
  return true;
}

bool same_orbit(const ModuleShape& shape, std::span<const Element> a, std::span<const Element> b) {
  check_same_length(a, b);
  return height_table(shape, a) == height_table(shape, b);
}

bool degenerates(const ModuleShape& shape, std::span<const Element> a, std::span<const Element> b) {
  check_same_length(a, b);
  return table_degenerates(height_table(shape, a), height_table(shape, b));
}

bool degenerates(const ModuleShape& A, std::span<const Element> a, const ModuleShape& B,
                 std::span<const Element> b) {
  return !degeneration_obstruction(A, a, B, b).has_value();
}

std::optional<HeightObstruction> degeneration_obstruction(const ModuleShape& A, std::span<const Element> a,
                                                          const ModuleShape& B, std::span<const Element> b) {
  check_same_length(a, b);
  if (!A.ring().same_base(B.ring())) throw InvalidInput("degeneration across different rings");
  const int K = std::max(A.exponent(), B.exponent());
  return first_non_inclusion(height_table(A, a, K), height_table(B, b, K));
}

std::optional<HeightObstruction> orbit_obstruction(const ModuleShape& shape, std::span<const Element> a,
                                                   std::span<const Element> b) {
  check_same_length(a, b);
  HeightTable ta = height_table(shape, a), tb = height_table(shape, b);
  if (auto w = first_non_inclusion(ta, tb)) return w;
  return first_non_inclusion(tb, ta);
}

int n_invariant(const HeightTable& table) {
  int n = 0;
  for (const auto& level : table.levels) n += log_cardinality(level);
  return n;
}

int n_invariant(const ModuleShape& shape, std::span<const Element> a) { return n_invariant(height_table(shape, a)); }

std::vector<TupleOrbit> enumerate_tuple_orbits(const ModuleShape& shape, int n, std::uint64_t bound,
                                               TableStrategy strategy) {
  if (n < 1) throw InvalidInput("tuple length must be >= 1");
  const std::uint64_t count = tuple_count(shape, n);
  check_bound("tuple orbit enumeration", count, bound);
  std::vector<TupleOrbit> orbits;
  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    ElementTuple t = tuple_at(shape, n, idx);
    HeightTable table = height_table(shape, t, strategy);
    auto [it, inserted] = seen.try_emplace(fingerprint(table), orbits.size());
    if (inserted) orbits.push_back({std::move(table), std::move(t), 0});
    ++orbits[it->second].size;
  }
  return orbits;
}

FinitePoset<std::size_t> degeneration_poset(const std::vector<TupleOrbit>& orbits) {
  std::vector<std::size_t> ids(orbits.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return FinitePoset<std::size_t>(std::move(ids), [&](std::size_t i, std::size_t j) {
    return table_degenerates(orbits[j].fingerprint, orbits[i].fingerprint);
  });
}

int chain_depth(const ModuleShape& shape, int n, std::uint64_t bound) {
  return degeneration_poset(enumerate_tuple_orbits(shape, n, bound)).height();
}

std::vector<UlmSequence> element_atoms(const ModuleShape& shape) {
  if (shape.is_zero()) throw InvalidInput("element_atoms: the zero module has no atoms");
  // a -> b iff ulm(b) dominates ulm(a); atoms are the nonzero sequences that
  // no other nonzero sequence dominates.
  std::vector<UlmSequence> nonzero;
  for (auto& s : enumerate_H_f(shape))
    if (s.finite_length() > 0) nonzero.push_back(s);
  std::vector<UlmSequence> atoms;
  for (const auto& s : nonzero) {
    bool atom = std::none_of(nonzero.begin(), nonzero.end(),
                             [&](const UlmSequence& t) { return t != s && t.dominates(s); });
    if (atom) atoms.push_back(s);
  }
  return atoms;
}

std::vector<ElementTuple> tuple_atoms(const ModuleShape& shape, int n, std::uint64_t bound) {
  if (n < 1) throw InvalidInput("tuple length must be >= 1");
  if (shape.is_zero()) return {};
  const std::uint64_t q = shape.ring().residue_field_size();
  const std::uint64_t count = saturating_pow(q, n);
  check_bound("tuple atom candidates", count, bound);

  // Canonical element atom: p^(k-1) in the first factor of exponent k.
  Element atom = shape.zero();
  for (std::size_t f = 0; f < shape.factor_count(); ++f) {
    if (shape.factor_exponent(f) == shape.exponent()) {
      atom.coords[f] = shape.ring().uniformizer_power(shape.exponent() - 1);
      break;
    }
  }

  std::vector<ElementTuple> out;
  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    ElementTuple t;
    std::uint64_t rest = idx;
    for (int i = 0; i < n; ++i) {
      t.push_back(shape.scale(Scalar{rest % q}, atom));
      rest /= q;
    }
    if (seen.insert(fingerprint(height_table(shape, t))).second) out.push_back(std::move(t));
  }
  return out;
}

std::vector<ElementTuple> exhaustive_tuple_atoms(const ModuleShape& shape, int n, std::uint64_t bound) {
  auto orbits = enumerate_tuple_orbits(shape, n, bound);
  auto poset = degeneration_poset(orbits);
  // The zero tuple has index 0, so its orbit is orbit 0 and the unique minimum.
  std::vector<ElementTuple> out;
  for (std::size_t i = 1; i < orbits.size(); ++i) {
    bool atom = true;
    for (std::size_t j = 1; j < orbits.size() && atom; ++j)
      if (poset.less(j, i)) atom = false;
    if (atom) out.push_back(orbits[i].representative);
  }
  return out;
}

HomTable extend_homomorphism(const ModuleShape& A, const ModuleShape& B, std::span<const Element> s,
                             std::span<const Element> t) {
  check_same_length(s, t);
  A.validate(s);
  B.validate(t);
  if (auto w = degeneration_obstruction(A, s, B, t)) throw NotHeightIncreasing(*w);
  if (A == B && std::equal(s.begin(), s.end(), t.begin())) return identity_table(A);

  const int K = std::max(A.exponent(), B.exponent());
  const RingSpec ring = A.ring().with_precision(K);
  ElementTuple source(s.begin(), s.end()), target(t.begin(), t.end());
  std::vector<Element> images;
  for (std::size_t f = 0; f < A.factor_count(); ++f) {
    source.push_back(A.generator(f));
    const HeightTable src = search_table(A, source, K);
    const Scalar order = ring.uniformizer_power(A.factor_exponent(f));
    bool found = false;
    for (std::uint64_t idx = 0; idx < B.order() && !found; ++idx) {
      Element b = B.element_at(idx);
      if (!B.is_zero(B.scale(order, b))) continue;
      target.push_back(b);
      if (table_degenerates(src, search_table(B, target, K))) {
        images.push_back(b);
        found = true;
      } else {
        target.pop_back();
      }
    }
    if (!found) throw std::logic_error("extend_homomorphism: no height-increasing extension found");
  }
  return HomTable(A, B, std::move(images));
}

HomTable build_automorphism(const ModuleShape& shape, std::span<const Element> a, std::span<const Element> b) {
  check_same_length(a, b);
  if (auto w = orbit_obstruction(shape, a, b)) throw NotSameOrbit(*w);
  if (std::equal(a.begin(), a.end(), b.begin())) return identity_table(shape);

  const int K = shape.exponent();
  ElementTuple source(a.begin(), a.end()), target(b.begin(), b.end());
  std::vector<Element> images(shape.factor_count());

  // Extend the partial isomorphism source -> target by one element on the
  // side given by `forward`, keeping the height tables equal.
  auto extend = [&](const Element& fixed, bool forward) -> Element {
    ElementTuple& known = forward ? source : target;
    ElementTuple& unknown = forward ? target : source;
    known.push_back(fixed);
    const HeightTable want = search_table(shape, known, K);
    for (std::uint64_t idx = 0; idx < shape.order(); ++idx) {
      Element x = shape.element_at(idx);
      unknown.push_back(x);
      if (search_table(shape, unknown, K) == want) return x;
      unknown.pop_back();
    }
    throw std::logic_error("build_automorphism: no height-preserving extension found");
  };

  for (std::size_t f = 0; f < shape.factor_count(); ++f) {
    images[f] = extend(shape.generator(f), true);
    extend(shape.generator(f), false);
  }
  HomTable phi(shape, shape, std::move(images));
  if (!phi.is_automorphism()) throw std::logic_error("build_automorphism: result is not bijective");
  return phi;
}

std::uint64_t submodule_size(const ModuleShape& shape, std::span<const Element> gens) {
  if (gens.empty()) return 1;
  const int k = shape.exponent();
  HeightTable table = height_table(shape, gens, TableStrategy::Kernel);
  int log_size = static_cast<int>(gens.size()) * k - log_cardinality(table.levels.back());
  return saturating_pow(shape.ring().residue_field_size(), log_size);
}

std::vector<Element> submodule_elements(const ModuleShape& shape, std::span<const Element> gens,
                                        std::uint64_t bound) {
  shape.validate(gens);
  check_bound("submodule enumeration", shape.order(), bound);
  const std::uint64_t q = shape.ring().residue_field_size();
  const Scalar p = shape.ring().uniformizer_power(1);
  std::vector<char> seen(shape.order(), 0);
  std::vector<Element> frontier{shape.zero()};
  seen[0] = 1;
  while (!frontier.empty()) {
    Element x = std::move(frontier.back());
    frontier.pop_back();
    auto visit = [&](Element y) {
      std::uint64_t idx = shape.index_of(y);
      if (!seen[idx]) {
        seen[idx] = 1;
        frontier.push_back(std::move(y));
      }
    };
    visit(shape.scale(p, x));
    for (const Element& g : gens)
      for (std::uint64_t c = 1; c < q; ++c) visit(shape.add(x, shape.scale(Scalar{c}, g)));
  }
  std::vector<Element> out;
  for (std::uint64_t idx = 0; idx < seen.size(); ++idx)
    if (seen[idx]) out.push_back(shape.element_at(idx));
  return out;
}

ElementTuple minimal_generators(const ModuleShape& shape, std::span<const Element> gens, std::uint64_t bound) {
  const std::uint64_t target = submodule_size(shape, gens);
  const Scalar p = shape.ring().uniformizer_power(1);
  ElementTuple chosen;
  ElementTuple with_radical;  // chosen plus p * gens spans chosen + pS
  for (const Element& g : gens) with_radical.push_back(shape.scale(p, g));
  std::uint64_t current = submodule_size(shape, with_radical);
  if (current == target) return chosen;
  for (const Element& x : submodule_elements(shape, gens, bound)) {
    with_radical.push_back(x);
    std::uint64_t grown = submodule_size(shape, with_radical);
    if (grown > current) {
      chosen.push_back(x);
      current = grown;
      if (current == target) break;
    } else {
      with_radical.pop_back();
    }
  }
  return chosen;
}

std::optional<ElementTuple> submodule_image_generators(const ModuleShape& shape, std::span<const Element> S,
                                                       std::span<const Element> T, bool want_same_orbit,
                                                       std::uint64_t bound) {
  if (S.empty() || T.empty()) throw InvalidInput("submodules need at least one generator");
  shape.validate(S);
  shape.validate(T);
  const ElementTuple s = minimal_generators(shape, S, bound);
  const std::vector<Element> t_elems = submodule_elements(shape, T, bound);
  const std::uint64_t t_size = t_elems.size();
  if (s.empty()) return t_size == 1 ? std::optional<ElementTuple>(ElementTuple{}) : std::nullopt;
  if (minimal_generators(shape, T, bound).size() > s.size()) return std::nullopt;
  if (want_same_orbit && submodule_size(shape, s) != t_size) return std::nullopt;

  const std::size_t m = s.size();
  check_bound("submodule generator search", saturating_pow(t_size, m), bound);
  const HeightTable source = height_table(shape, s);
  std::vector<std::size_t> pick(m, 0);
  ElementTuple t(m);
  while (true) {
    for (std::size_t i = 0; i < m; ++i) t[i] = t_elems[pick[i]];
    HeightTable table = height_table(shape, t);
    bool ok = want_same_orbit ? table == source : table_degenerates(source, table);
    if (ok && submodule_size(shape, t) == t_size) return t;
    std::size_t i = 0;
    while (i < m && ++pick[i] == t_size) pick[i++] = 0;
    if (i == m) break;
  }
  return std::nullopt;
}

bool submodule_degenerates(const ModuleShape& shape, std::span<const Element> S, std::span<const Element> T,
                           std::uint64_t bound) {
  return submodule_image_generators(shape, S, T, false, bound).has_value();
}

bool submodule_same_orbit(const ModuleShape& shape, std::span<const Element> S, std::span<const Element> T,
                          std::uint64_t bound) {
  return submodule_degenerates(shape, S, T, bound) && submodule_degenerates(shape, T, S, bound);
}

std::optional<HomTable> submodule_automorphism(const ModuleShape& shape, std::span<const Element> S,
                                               std::span<const Element> T, std::uint64_t bound) {
  auto t = submodule_image_generators(shape, S, T, true, bound);
  if (!t) return std::nullopt;
  ElementTuple s = minimal_generators(shape, S, bound);
  if (s.empty()) return identity_table(shape);
  return build_automorphism(shape, s, *t);
}

}  // namespace ulm
