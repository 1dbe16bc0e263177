#include <doctest.h>

#include <cmath>

#include "brute.hpp"
#include "helpers.hpp"
#include "ulm/errors.hpp"
#include "ulm/module.hpp"
#include "ulm/posets.hpp"

using namespace ulm;
using testing::el;
using testing::int_shape;
using testing::poly_shape;

namespace {

brute::Vec to_vec(const Element& a) {
  brute::Vec v;
  for (auto c : a.coords) v.push_back(static_cast<long>(c.code));
  return v;
}

int brute_height(const brute::Group& g, const Element& a) { return g.height(to_vec(a)); }

}  // namespace

TEST_CASE("height examples on A1") {
  ModuleShape A1 = int_shape(2, {{1, 1}, {2, 1}});
  CHECK(height(A1, el({1, 0})) == Height(0));
  CHECK(height(A1, el({0, 2})) == Height(1));
  CHECK(height(A1, el({0, 0})).is_infinite());
  CHECK_THROWS_AS(height(A1, el({2, 0})), InvalidInput);
  CHECK_THROWS_AS(height(A1, el({1})), InvalidInput);
}

TEST_CASE("heights match divisibility search") {
  for (auto [p, alphas] : {std::pair<long, std::vector<int>>{2, {1, 2}}, {2, {1, 3}}, {3, {1, 2}}, {2, {1, 1, 2}}}) {
    std::map<int, int> mult;
    for (int a : alphas) ++mult[a];
    ModuleShape shape = int_shape(p, mult);
    brute::Group g{p, alphas};
    for (std::uint64_t i = 0; i < shape.order(); ++i) {
      Element a = shape.element_at(i);
      int expect = brute_height(g, a);
      Height h = height(shape, a);
      if (expect == brute::kInf)
        CHECK(h.is_infinite());
      else
        CHECK(h == Height(expect));
    }
  }
}

TEST_CASE("ulm_sequence examples") {
  ModuleShape A1 = int_shape(2, {{1, 1}, {2, 1}});
  CHECK(ulm_sequence(A1, el({0, 1})) == UlmSequence({0, 1}));
  CHECK(ulm_sequence(A1, el({0, 0})) == UlmSequence());
  CHECK(ulm_sequence(A1, el({1, 2})) == UlmSequence({0}));
  CHECK(ulm_sequence(A1, el({0, 1})).to_string() == "0,1,inf");
  CHECK(ulm_sequence(A1, el({0, 0})).to_string() == "inf");
}

TEST_CASE("ulm sequences match repeated divisibility search and lie in H_f") {
  for (auto [p, alphas] : {std::pair<long, std::vector<int>>{2, {1, 2}}, {2, {1, 3}}, {3, {2, 2}}, {2, {1, 1, 2}}}) {
    std::map<int, int> mult;
    for (int a : alphas) ++mult[a];
    ModuleShape shape = int_shape(p, mult);
    brute::Group g{p, alphas};
    auto hf = enumerate_H_f(shape);
    for (std::uint64_t i = 0; i < shape.order(); ++i) {
      Element a = shape.element_at(i);
      UlmSequence s = ulm_sequence(shape, a);
      CHECK(s.finite() == g.ulm_sequence(to_vec(a)));
      CHECK(std::find(hf.begin(), hf.end(), s) != hf.end());
    }
  }
}

TEST_CASE("ulm_invariants examples") {
  CHECK(ulm_invariants(int_shape(2, {{1, 1}, {2, 1}})) == std::map<int, int>{{0, 1}, {1, 1}});
  CHECK(ulm_invariants(int_shape(2, {})).empty());
  CHECK(ulm_invariants(int_shape(3, {{3, 2}})) == std::map<int, int>{{2, 2}});
}

TEST_CASE("ulm invariants are socle layer dimensions") {
  for (auto [p, alphas] : {std::pair<long, std::vector<int>>{2, {1, 2}}, {3, {3, 3}}, {2, {1, 1, 3}}, {2, {2, 4}}}) {
    std::map<int, int> mult;
    for (int a : alphas) ++mult[a];
    ModuleShape shape = int_shape(p, mult);
    brute::Group g{p, alphas};
    // |P(A)_beta| = q^(dim); f_beta = dim P_beta - dim P_(beta+1).
    auto layer_dim = [&](int beta) {
      long count = 0;
      for (const auto& x : g.elements())
        if (g.is_zero(g.scale(p, x)) && (g.is_zero(x) || g.height(x) >= beta)) ++count;
      return static_cast<int>(std::lround(std::log(static_cast<double>(count)) / std::log(static_cast<double>(p))));
    };
    std::map<int, int> expect;
    for (int beta = 0; beta < g.exponent(); ++beta) {
      int f = layer_dim(beta) - layer_dim(beta + 1);
      if (f > 0) expect[beta] = f;
    }
    CHECK(shape.ulm_invariants() == expect);
    int total = 0;
    for (auto [beta, f] : expect) total += f;
    CHECK(total == static_cast<int>(shape.factor_count()));
  }
}

TEST_CASE("linear_combination examples") {
  ModuleShape A1 = int_shape(2, {{1, 1}, {2, 1}});
  ElementTuple t{el({1, 0}), el({0, 1})};
  CHECK(linear_combination(A1, t, testing::sc({0, 0})) == el({0, 0}));
  CHECK(linear_combination(A1, t, testing::sc({1, 1})) == el({1, 1}));
  ElementTuple single{el({0, 1})};
  CHECK(linear_combination(A1, single, testing::sc({2})) == el({0, 2}));
  CHECK_THROWS_AS(linear_combination(A1, t, testing::sc({1})), InvalidInput);
}

TEST_CASE("primary_decomposition examples") {
  std::vector<std::uint64_t> twelve{12};
  auto d = primary_decomposition(twelve);
  REQUIRE(d.size() == 2);
  CHECK(d.at(2).multiplicities() == std::map<int, int>{{2, 1}});
  CHECK(d.at(3).multiplicities() == std::map<int, int>{{1, 1}});

  std::vector<std::uint64_t> four_two{4, 2};
  auto d2 = primary_decomposition(four_two);
  REQUIRE(d2.size() == 1);
  CHECK(d2.at(2).multiplicities() == std::map<int, int>{{1, 1}, {2, 1}});

  std::vector<std::uint64_t> five{5};
  CHECK(primary_decomposition(five).at(5).multiplicities() == std::map<int, int>{{1, 1}});

  std::vector<std::uint64_t> bad{1};
  CHECK_THROWS_AS(primary_decomposition(bad), InvalidInput);
}

TEST_CASE("shape bookkeeping") {
  ModuleShape s = int_shape(3, {{1, 2}, {3, 1}, {2, 0}});
  CHECK(s.multiplicities() == std::map<int, int>{{1, 2}, {3, 1}});
  CHECK(s.exponent() == 3);
  CHECK(s.factor_count() == 3);
  CHECK(s.log_order() == 5);
  CHECK(s.order() == 243);
  CHECK(s.ring().precision() == 3);

  ModuleShape zero = int_shape(2, {});
  CHECK(zero.is_zero());
  CHECK(zero.order() == 1);
  CHECK(zero.exponent() == 0);
  CHECK_THROWS_AS(int_shape(2, {{0, 1}}), InvalidInput);
  CHECK_THROWS_AS(int_shape(2, {{1, -1}}), InvalidInput);
}

TEST_CASE("element indexing round-trips") {
  for (const ModuleShape& s : {int_shape(2, {{1, 1}, {2, 1}}), poly_shape(4, {{1, 1}, {2, 1}}), int_shape(3, {{2, 2}})}) {
    for (std::uint64_t i = 0; i < s.order(); ++i) CHECK(s.index_of(s.element_at(i)) == i);
    for (std::uint64_t i = 0; i < tuple_count(s, 2); i += 7) CHECK(tuple_index(s, tuple_at(s, 2, i)) == i);
  }
  ModuleShape A1 = int_shape(2, {{1, 1}, {2, 1}});
  CHECK(A1.element_at(1) == el({1, 0}));
  CHECK(A1.element_at(2) == el({0, 1}));
}

TEST_CASE("socle is the p-torsion") {
  ModuleShape s = poly_shape(3, {{1, 1}, {2, 1}});
  std::size_t expect = 0;
  const Scalar p = s.ring().uniformizer_power(1);
  for (std::uint64_t i = 0; i < s.order(); ++i)
    if (s.is_zero(s.scale(p, s.element_at(i)))) ++expect;
  CHECK(s.socle().size() == expect);
  CHECK(expect == 9);
}

TEST_CASE("UlmSequence parsing and validation") {
  CHECK(UlmSequence::parse("(0,1,inf)") == UlmSequence({0, 1}));
  CHECK(UlmSequence::parse("inf") == UlmSequence());
  CHECK(UlmSequence::parse("0, 2, inf") == UlmSequence({0, 2}));
  CHECK_THROWS_AS(UlmSequence::parse("1,0,inf"), InvalidInput);
  CHECK_THROWS_AS(UlmSequence::parse("inf,1"), InvalidInput);
  CHECK_THROWS_AS(UlmSequence::parse("a"), InvalidInput);
  CHECK(UlmSequence({1}).dominates(UlmSequence({0, 1})));
  CHECK_FALSE(UlmSequence({0, 1}).dominates(UlmSequence({1})));
  CHECK(UlmSequence().dominates(UlmSequence({0})));
}
