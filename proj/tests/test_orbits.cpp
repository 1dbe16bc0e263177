#include <doctest.h>

#include <set>

#include "brute.hpp"
#include "helpers.hpp"
#include "ulm/errors.hpp"
#include "ulm/hom.hpp"
#include "ulm/orbits.hpp"
#include "ulm/posets.hpp"

using namespace ulm;
using testing::el;
using testing::int_shape;
using testing::poly_shape;

namespace {

const ModuleShape A1 = int_shape(2, {{1, 1}, {2, 1}});

brute::Vec to_vec(const Element& a) {
  brute::Vec v;
  for (auto c : a.coords) v.push_back(static_cast<long>(c.code));
  return v;
}

std::vector<brute::Vec> to_vecs(const ElementTuple& t) {
  std::vector<brute::Vec> out;
  for (const auto& a : t) out.push_back(to_vec(a));
  return out;
}

brute::Group group_of(const ModuleShape& s) {
  std::vector<int> alphas;
  for (const auto& f : s.factors()) alphas.push_back(f.alpha);
  return {static_cast<long>(s.ring().residue_field_size()), alphas};
}

// Element orbits of the integer shape, as sets of indices, from the brute group.
std::set<std::vector<long>> brute_partition_n1(const ModuleShape& s) {
  auto orbits = group_of(s).element_orbits();
  return {orbits.begin(), orbits.end()};
}

}  // namespace

TEST_CASE("same_orbit examples") {
  ElementTuple a{el({0, 1})}, b{el({1, 3})}, c{el({1, 0})}, d{el({0, 2})};
  CHECK(same_orbit(A1, a, b));
  CHECK(same_orbit(A1, a, a));
  CHECK_FALSE(same_orbit(A1, c, d));
  CHECK(group_of(A1).degenerates(to_vecs(a), to_vecs(b)));
  CHECK(group_of(A1).degenerates(to_vecs(b), to_vecs(a)));
  CHECK_THROWS_AS(same_orbit(A1, a, ElementTuple{el({0, 1}), el({0, 0})}), InvalidInput);
}

TEST_CASE("degenerates examples") {
  ElementTuple a{el({1, 0}), el({0, 1})}, b{el({1, 0}), el({0, 2})};
  CHECK(degenerates(A1, a, b));
  CHECK_FALSE(degenerates(A1, b, a));
  CHECK(group_of(A1).degenerates(to_vecs(a), to_vecs(b)));
  CHECK_FALSE(group_of(A1).degenerates(to_vecs(b), to_vecs(a)));
  ElementTuple zero{el({0, 0}), el({0, 0})};
  CHECK(degenerates(A1, a, zero));
  CHECK(degenerates(A1, b, b));
}

TEST_CASE("degeneration over all element pairs matches endomorphism search") {
  for (const ModuleShape& s : {A1, int_shape(2, {{1, 1}, {3, 1}}), int_shape(3, {{1, 1}, {2, 1}}),
                               int_shape(2, {{1, 2}, {2, 1}})}) {
    brute::Group g = group_of(s);
    const auto endos = g.endomorphisms();
    for (std::uint64_t i = 0; i < s.order(); ++i)
      for (std::uint64_t j = 0; j < s.order(); ++j) {
        ElementTuple a{s.element_at(i)}, b{s.element_at(j)};
        REQUIRE(degenerates(s, a, b) == g.degenerates(endos, to_vecs(a), to_vecs(b)));
      }
  }
}

TEST_CASE("degeneration across two shapes") {
  ModuleShape z2 = int_shape(2, {{1, 1}}), z4 = int_shape(2, {{2, 1}});
  ElementTuple one{el({1})}, two{el({2})}, gen{el({1})};
  // Z/2 -> Z/4 sends 1 to an element killed by 2, so only 0 and 2 are reachable.
  CHECK(degenerates(z2, one, z4, two));
  CHECK_FALSE(degenerates(z2, one, z4, gen));
  CHECK(degenerates(z4, gen, z2, one));
  CHECK_FALSE(degenerates(z4, two, z2, one));
  CHECK(degeneration_obstruction(z2, one, z4, gen).has_value());
  CHECK_THROWS_AS(degenerates(z2, one, poly_shape(2, {{2, 1}}), two), InvalidInput);
}

TEST_CASE("n_invariant examples") {
  CHECK(n_invariant(A1, ElementTuple{el({0, 0})}) == 6);
  CHECK(n_invariant(A1, ElementTuple{el({0, 2})}) == 5);
  CHECK(n_invariant(A1, ElementTuple{el({1, 0})}) == 4);
}

TEST_CASE("chain_depth examples") {
  CHECK(chain_depth(A1, 1) == 3);
  CHECK(chain_depth(int_shape(2, {}), 1) == 0);
  CHECK(chain_depth(int_shape(2, {{1, 1}}), 1) == 1);
  CHECK(chain_depth(A1, 1) <= 1 * 2 * 3);
}

TEST_CASE("element_atoms examples") {
  CHECK(element_atoms(A1) == std::vector<UlmSequence>{UlmSequence({1})});
  CHECK(element_atoms(int_shape(2, {{1, 1}})) == std::vector<UlmSequence>{UlmSequence({0})});
  CHECK(element_atoms(int_shape(2, {{1, 1}, {3, 1}})) == std::vector<UlmSequence>{UlmSequence({2})});
  CHECK_THROWS_AS(element_atoms(int_shape(2, {})), InvalidInput);
}

TEST_CASE("element atoms are the orbits that degenerate only to themselves and zero") {
  for (const ModuleShape& s : {A1, int_shape(2, {{1, 1}, {3, 1}}), int_shape(2, {{1, 2}, {2, 1}}),
                               int_shape(3, {{2, 1}, {3, 1}})}) {
    brute::Group g = group_of(s);
    const auto endos = g.endomorphisms();
    std::set<std::vector<int>> expect;
    for (long i = 1; i < g.order(); ++i) {
      brute::Vec a = g.at(i);
      bool atom = true;
      for (long j = 1; j < g.order() && atom; ++j) {
        brute::Vec b = g.at(j);
        if (g.degenerates(endos, {a}, {b}) && !g.degenerates(endos, {b}, {a})) atom = false;
      }
      if (atom) expect.insert(g.ulm_sequence(a));
    }
    std::set<std::vector<int>> got;
    for (const auto& s2 : element_atoms(s)) got.insert(s2.finite());
    CHECK(got == expect);
  }
}

TEST_CASE("tuple_atoms examples") {
  std::set<ElementTuple> expect2{{el({0, 2}), el({0, 0})}, {el({0, 0}), el({0, 2})}, {el({0, 2}), el({0, 2})}};
  auto atoms2 = tuple_atoms(A1, 2);
  CHECK(atoms2.size() == 3);
  // Compare orbit by orbit, since any representative is acceptable.
  for (const auto& want : expect2) {
    int hits = 0;
    for (const auto& got : atoms2) hits += same_orbit(A1, got, want) ? 1 : 0;
    CHECK(hits == 1);
  }
  auto atoms1 = tuple_atoms(A1, 1);
  REQUIRE(atoms1.size() == 1);
  CHECK(same_orbit(A1, atoms1[0], ElementTuple{el({0, 2})}));
  CHECK(tuple_atoms(int_shape(2, {}), 1).empty());
}

TEST_CASE("tuple atoms match the exhaustive scan") {
  for (const ModuleShape& s : {A1, int_shape(3, {{1, 1}, {2, 1}}), int_shape(2, {{1, 2}, {2, 1}}), poly_shape(4, {{1, 1}, {2, 1}})}) {
    for (int n : {1, 2}) {
      if (tuple_count(s, n) > 4096) continue;
      auto closed = tuple_atoms(s, n), scanned = exhaustive_tuple_atoms(s, n);
      REQUIRE(closed.size() == scanned.size());
      for (const auto& t : closed) {
        int hits = 0;
        for (const auto& u : scanned) hits += same_orbit(s, t, u) ? 1 : 0;
        CHECK(hits == 1);
      }
    }
  }
}

TEST_CASE("enumerate_tuple_orbits examples") {
  auto orbits = enumerate_tuple_orbits(A1, 1);
  REQUIRE(orbits.size() == 4);
  std::multiset<std::uint64_t> sizes;
  for (const auto& o : orbits) sizes.insert(o.size);
  CHECK(sizes == std::multiset<std::uint64_t>{1, 1, 2, 4});

  std::set<std::vector<long>> got;
  for (const auto& o : orbits) {
    std::vector<long> members;
    for (std::uint64_t i = 0; i < A1.order(); ++i)
      if (same_orbit(A1, ElementTuple{A1.element_at(i)}, o.representative)) members.push_back(static_cast<long>(i));
    CHECK(members.size() == o.size);
    got.insert(members);
  }
  CHECK(got == brute_partition_n1(A1));
  // {(1,0),(1,2)} and {(0,1),(1,1),(0,3),(1,3)} from the element indices.
  CHECK(got.count({1, 5}) == 1);
  CHECK(got.count({2, 3, 6, 7}) == 1);

  CHECK(enumerate_tuple_orbits(int_shape(2, {}), 1).size() == 1);
  CHECK_THROWS_AS(enumerate_tuple_orbits(A1, 3, 100), BoundExceeded);
}

TEST_CASE("orbit sizes sum to |A|^n") {
  for (const ModuleShape& s : {A1, poly_shape(3, {{1, 1}, {2, 1}}), int_shape(2, {{1, 1}, {3, 1}})}) {
    std::uint64_t total = 0;
    for (const auto& o : enumerate_tuple_orbits(s, 2)) total += o.size;
    CHECK(total == tuple_count(s, 2));
  }
}

TEST_CASE("degeneration implies N non-decreasing, and equal N forces the reverse") {
  for (const ModuleShape& s : {A1, int_shape(2, {{1, 1}, {3, 1}})}) {
    auto orbits = enumerate_tuple_orbits(s, 2);
    for (const auto& a : orbits)
      for (const auto& b : orbits) {
        if (!degenerates(s, a.representative, b.representative)) continue;
        int na = n_invariant(s, a.representative), nb = n_invariant(s, b.representative);
        CHECK(na <= nb);
        if (na == nb) CHECK(degenerates(s, b.representative, a.representative));
        CHECK(nb <= 2 * s.exponent() * (s.exponent() + 1));
      }
  }
}

TEST_CASE("extend_homomorphism examples") {
  ElementTuple s{el({0, 1})}, t{el({0, 2})};
  HomTable phi = extend_homomorphism(A1, A1, s, t);
  CHECK(phi.apply(el({0, 1})) == el({0, 2}));
  CHECK(phi.images()[1] == el({0, 2}));
  CHECK(verify_homomorphism(phi));

  ElementTuple gens{el({1, 0}), el({0, 1})};
  CHECK(extend_homomorphism(A1, A1, gens, gens) == identity_table(A1));

  ElementTuple s2{el({0, 2})}, t2{el({1, 0})};
  try {
    extend_homomorphism(A1, A1, s2, t2);
    FAIL("expected NotHeightIncreasing");
  } catch (const NotHeightIncreasing& e) {
    CHECK(e.witness.height == 1);
    REQUIRE(e.witness.coefficients.size() == 1);
    Scalar r = e.witness.coefficients[0];
    CHECK(height(A1, A1.scale(r, el({0, 2}))) >= Height(1));
    CHECK(height(A1, A1.scale(r, el({1, 0}))) < Height(1));
  }
}

TEST_CASE("extend_homomorphism across shapes") {
  ModuleShape z2 = int_shape(2, {{1, 1}}), z4 = int_shape(2, {{2, 1}});
  HomTable phi = extend_homomorphism(z2, z4, ElementTuple{el({1})}, ElementTuple{el({2})});
  CHECK(phi.apply(el({1})) == el({2}));
  CHECK(verify_homomorphism(phi));
  CHECK_FALSE(phi.is_automorphism());
  CHECK_THROWS_AS(extend_homomorphism(z2, z4, ElementTuple{el({1})}, ElementTuple{el({1})}), NotHeightIncreasing);
}

TEST_CASE("build_automorphism examples") {
  ElementTuple a{el({0, 1})}, b{el({1, 3})};
  HomTable phi = build_automorphism(A1, a, b);
  CHECK(phi.is_automorphism());
  CHECK(phi.apply(el({0, 1})) == el({1, 3}));
  std::set<Element> images;
  for (std::uint64_t i = 0; i < A1.order(); ++i) images.insert(phi.apply(A1.element_at(i)));
  CHECK(images.size() == A1.order());

  CHECK(build_automorphism(A1, a, a) == identity_table(A1));
  CHECK_THROWS_AS(build_automorphism(A1, ElementTuple{el({1, 0})}, ElementTuple{el({0, 2})}), NotSameOrbit);
}

TEST_CASE("build_automorphism over every same-orbit pair of A1 pairs") {
  auto orbits = enumerate_tuple_orbits(A1, 2);
  for (std::uint64_t i = 0; i < tuple_count(A1, 2); i += 3) {
    ElementTuple a = tuple_at(A1, 2, i);
    for (std::uint64_t j = 0; j < tuple_count(A1, 2); j += 5) {
      ElementTuple b = tuple_at(A1, 2, j);
      if (!same_orbit(A1, a, b)) continue;
      HomTable phi = build_automorphism(A1, a, b);
      REQUIRE(phi.is_automorphism());
      CHECK(phi.apply(a) == b);
      std::set<Element> images;
      for (std::uint64_t k = 0; k < A1.order(); ++k) images.insert(phi.apply(A1.element_at(k)));
      CHECK(images.size() == A1.order());
    }
  }
}

TEST_CASE("submodule examples") {
  ElementTuple s{el({1, 0})}, t{el({0, 2})};
  CHECK(submodule_degenerates(A1, s, t));
  CHECK_FALSE(submodule_degenerates(A1, t, s));
  CHECK(submodule_degenerates(A1, s, s));

  CHECK(submodule_same_orbit(A1, ElementTuple{el({0, 1})}, ElementTuple{el({1, 3})}));
  CHECK_FALSE(submodule_same_orbit(A1, s, t));
  CHECK(submodule_same_orbit(A1, s, s));

  auto phi = submodule_automorphism(A1, ElementTuple{el({0, 1})}, ElementTuple{el({1, 3})});
  REQUIRE(phi.has_value());
  CHECK(phi->is_automorphism());
  std::set<Element> image, target;
  for (const auto& x : submodule_elements(A1, ElementTuple{el({0, 1})})) image.insert(phi->apply(x));
  for (const auto& x : submodule_elements(A1, ElementTuple{el({1, 3})})) target.insert(x);
  CHECK(image == target);
  CHECK_FALSE(submodule_automorphism(A1, s, t).has_value());
}

TEST_CASE("submodule sizes, elements and generators") {
  for (const ModuleShape& s : {A1, int_shape(2, {{1, 2}, {2, 1}}), int_shape(3, {{1, 1}, {2, 1}})}) {
    brute::Group g = group_of(s);
    for (std::uint64_t i = 0; i < tuple_count(s, 2); i += 7) {
      ElementTuple gens = tuple_at(s, 2, i);
      std::set<brute::Vec> expect;
      const long m = brute::ipow(g.p, g.exponent());
      for (long c0 = 0; c0 < m; ++c0)
        for (long c1 = 0; c1 < m; ++c1) expect.insert(g.add(g.scale(c0, to_vec(gens[0])), g.scale(c1, to_vec(gens[1]))));
      auto elems = submodule_elements(s, gens);
      CHECK(elems.size() == expect.size());
      CHECK(submodule_size(s, gens) == expect.size());
      std::set<brute::Vec> got;
      for (const auto& x : elems) got.insert(to_vec(x));
      CHECK(got == expect);

      // Minimal generators span the same set and number dim S/pS.
      ElementTuple mg = minimal_generators(s, gens);
      CHECK(submodule_elements(s, mg) == elems);
      std::set<brute::Vec> pS;
      for (const auto& x : expect) pS.insert(g.scale(g.p, x));
      long ratio = static_cast<long>(expect.size() / pS.size());
      CHECK(brute::ipow(g.p, static_cast<int>(mg.size())) == ratio);
    }
  }
}

TEST_CASE("submodule degeneration matches an endomorphism search") {
  brute::Group g = group_of(A1);
  auto endos = g.endomorphisms();
  auto span_of = [&](const brute::Vec& x) {
    std::set<brute::Vec> out;
    for (long c = 0; c < 4; ++c) out.insert(g.scale(c, x));
    return out;
  };
  for (std::uint64_t i = 0; i < A1.order(); ++i)
    for (std::uint64_t j = 0; j < A1.order(); ++j) {
      brute::Vec a = g.at(static_cast<long>(i)), b = g.at(static_cast<long>(j));
      auto S = span_of(a), T = span_of(b);
      bool onto = false, auto_onto = false;
      for (const auto& m : endos) {
        std::set<brute::Vec> img;
        for (const auto& x : S) img.insert(g.apply(m, x));
        if (img == T) {
          onto = true;
          if (g.injective(m)) auto_onto = true;
        }
      }
      ElementTuple s{A1.element_at(i)}, t{A1.element_at(j)};
      CHECK(submodule_degenerates(A1, s, t) == onto);
      CHECK(submodule_same_orbit(A1, s, t) == auto_onto);
    }
}
