// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ulm/oracle.hpp"
#include "ulm/orbits.hpp"
#include "ulm/posets.hpp"
#include "ulm/verify.hpp"

using namespace ulm;

namespace {

ModuleShape int_shape(std::uint64_t p, std::map<int, int> mult) {
  return ModuleShape(RingSpec::integer_local(p, 1), mult);
}
ModuleShape poly_shape(std::uint64_t q, std::map<int, int> mult) {
  return ModuleShape(RingSpec::polynomial_local(q, 1), mult);
}

const std::map<int, int> kA1{{1, 1}, {2, 1}}, kA2{{1, 1}, {3, 1}}, kA3{{1, 2}, {2, 1}};

std::vector<ModuleShape> test_shapes() {
  return {int_shape(2, kA1), int_shape(3, kA1), int_shape(2, kA2), int_shape(2, kA3),
          poly_shape(2, kA1), poly_shape(2, kA2), poly_shape(2, kA3), poly_shape(3, kA1)};
}

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;
  std::string failure;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      failure = what;
    }
  }
  void take(const SuiteResult& r, const std::string& where) {
    require(r.passed, where + ": " + r.detail);
  }
};

std::string where(const ModuleShape& s, int n) { return to_string(s) + " n=" + std::to_string(n); }

// All TupleData is shared across criteria so the oracle runs once per shape and n.
struct Workspace {
  std::vector<ModuleShape> shapes = test_shapes();
  std::vector<std::unique_ptr<TupleData>> data;  // shape-major, n = 1, 2
  VerifyOptions opts;

  Workspace() {
    opts.full_pair_limit = 1000000;
    opts.pair_samples = 10000;
    opts.construction_samples = 100;
    for (const auto& s : shapes)
      for (int n : {1, 2}) data.push_back(std::make_unique<TupleData>(s, n, kDefaultBound));
  }
};

Outcome criterion1(Workspace& w) {
  Outcome o;
  std::size_t orbits = 0;
  for (auto& d : w.data) {
    auto r = check_barker(*d);
    o.take(r, where(d->shape(), d->n()));
    orbits += d->brute_partition().orbits.size();
  }
  o.notes.push_back(std::to_string(w.data.size()) + " shape/n cases, " + std::to_string(orbits) + " orbits total");
  return o;
}

Outcome criterion2(Workspace& w) {
  Outcome o;
  std::uint64_t pairs = 0;
  for (auto& d : w.data) {
    o.take(check_degeneration(*d, w.opts), where(d->shape(), d->n()));
    pairs += d->pairs(w.opts.full_pair_limit, w.opts.pair_samples, w.opts.seed).size();
  }
  o.notes.push_back(std::to_string(pairs) + " pairs compared");
  return o;
}

Outcome criterion3(Workspace& w) {
  Outcome o;
  for (auto& d : w.data) o.take(check_mutual(*d, w.opts), where(d->shape(), d->n()));
  o.notes.push_back("no counterexample in any case");
  return o;
}

Outcome criterion4() {
  Outcome o;
  // Every multiset of at most 4 exponents from {1,2,3,4}, plus the zero module.
  std::vector<std::map<int, int>> supports{{}};
  std::function<void(int, int, std::map<int, int>&)> grow = [&](int from, int left, std::map<int, int>& cur) {
    if (left == 0) return;
    for (int a = from; a <= 4; ++a) {
      ++cur[a];
      supports.push_back(cur);
      grow(a, left - 1, cur);
      if (--cur[a] == 0) cur.erase(a);
    }
  };
  std::map<int, int> cur;
  grow(1, 4, cur);
  for (const auto& m : supports) o.take(check_dictionary(int_shape(2, m), kDefaultBound), to_string(int_shape(2, m)));
  o.notes.push_back(std::to_string(supports.size()) + " shapes");
  return o;
}

Outcome criterion5(Workspace& w) {
  Outcome o;
  for (auto& d : w.data)
    if (d->n() == 1) o.take(check_orbit_count(*d, kDefaultBound), to_string(d->shape()));
  OrbitPartition a1 = brute_orbits(int_shape(2, kA1), 1);
  std::multiset<std::size_t> sizes;
  for (const auto& orbit : a1.orbits) sizes.insert(orbit.size());
  o.require(a1.orbits.size() == 4, "A1 over Z/4 has " + std::to_string(a1.orbits.size()) + " element orbits");
  o.require(sizes == std::multiset<std::size_t>{1, 2, 1, 4}, "A1 orbit sizes differ from {1,2,1,4}");
  o.require(enumerate_H_f(int_shape(2, kA1)).size() == 4, "|H_f(A1)| != 4");
  o.require(enumerate_ideals(build_Pf(int_shape(2, kA1))).size() == 4, "|J(P_f(A1))| != 4");
  o.notes.push_back("A1: 4 orbits, sizes {1,1,2,4}");
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const auto& m : {kA1, kA2, kA3}) {
    auto base = brute_element_poset(int_shape(2, m));
    std::vector<ModuleShape> others{int_shape(3, m), poly_shape(2, m), poly_shape(3, m)};
    // Over F_4 the third shape already has 2^20 endomorphisms.
    if (m != kA3) others.push_back(poly_shape(4, m));
    for (const ModuleShape& other : others) {
      o.require(poset_isomorphism_check(base, brute_element_poset(other)),
                to_string(int_shape(2, m)) + " vs " + to_string(other));
    }
    o.require(poset_isomorphism_check(base, orbit_poset_elements(int_shape(2, m))),
              to_string(int_shape(2, m)) + " vs H_f");
  }
  o.notes.push_back("3 shapes over Z_2, Z_3, F_2[t], F_3[t], F_4[t]");
  return o;
}

Outcome criterion7(Workspace& w) {
  Outcome o;
  for (auto& d : w.data) {
    o.take(check_n_invariant(*d, w.opts), where(d->shape(), d->n()));
    auto r = check_depth(*d);
    o.take(r, where(d->shape(), d->n()));
  }
  const ModuleShape a1 = int_shape(2, kA1);
  const int depth = chain_depth(a1, 1);
  TupleData d(a1, 1, kDefaultBound);
  o.require(depth == 3, "A1 n=1 chain depth is " + std::to_string(depth));
  o.require(d.brute_poset().height() == 3, "A1 n=1 oracle chain depth is " + std::to_string(d.brute_poset().height()));
  o.notes.push_back("A1 n=1 depth " + std::to_string(depth) + " <= 6");
  return o;
}

Outcome criterion8(Workspace& w) {
  Outcome o;
  std::size_t atoms = 0;
  for (auto& d : w.data) {
    o.take(check_atoms(*d), where(d->shape(), d->n()));
    atoms += tuple_atoms(d->shape(), d->n()).size();
  }
  o.notes.push_back(std::to_string(atoms) + " atom orbits");
  return o;
}

Outcome criterion9(Workspace& w) {
  Outcome o;
  for (auto& d : w.data) o.take(check_construction(*d, 100, w.opts.seed), where(d->shape(), d->n()));
  o.notes.push_back("100 automorphisms and 100 extensions per case");
  return o;
}

Outcome criterion10() {
  Outcome o;
  const ModuleShape a1 = int_shape(2, kA1);
  EndoSet e = enumerate_endomorphisms(a1), a = enumerate_automorphisms(a1);
  o.require(e.endomorphism_count == 32 && e.maps.size() == 32,
            "endomorphisms: " + std::to_string(e.endomorphism_count));
  o.require(endomorphism_count(a1) == 32, "product formula gives " + std::to_string(endomorphism_count(a1)));
  o.require(a.automorphism_count == 8 && a.maps.size() == 8, "automorphisms: " + std::to_string(a.automorphism_count));
  o.notes.push_back("32 endomorphisms, 8 automorphisms");
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  std::unique_ptr<Workspace> w;
  try {
    w = std::make_unique<Workspace>();
  } catch (const std::exception& e) {
    std::cout << "FAIL setup: " << e.what() << "\n";
    return 1;
  }
  std::vector<Entry> entries{
      {1, "Barker partition equals automorphism orbits", [&] { return criterion1(*w); }},
      {2, "degeneration equals endomorphism search", [&] { return criterion2(*w); }},
      {3, "mutual degeneration implies same orbit", [&] { return criterion3(*w); }},
      {4, "kappa and I are inverse order isomorphisms", [] { return criterion4(); }},
      {5, "|H_f| = |J(P_f)| = element orbit count", [&] { return criterion5(*w); }},
      {6, "element posets agree across rings", [] { return criterion6(); }},
      {7, "N monotone and chain depth bounded", [&] { return criterion7(*w); }},
      {8, "atoms match the closed form", [&] { return criterion8(*w); }},
      {9, "constructed automorphisms and extensions verify", [&] { return criterion9(*w); }},
      {10, "endomorphism and automorphism counts", [] { return criterion10(); }},
  };
  int failures = 0;
  for (auto& e : entries) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.passed = false;
      o.failure = std::string("exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string detail = o.passed ? (o.notes.empty() ? "" : o.notes.front()) : o.failure;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << e.id << ": " << e.title << " (" << detail << ", "
              << timing << ")" << std::endl;
    failures += o.passed ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
