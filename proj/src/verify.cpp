#include "ulm/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ulm/orbits.hpp"
#include "ulm/posets.hpp"

namespace ulm {

TupleData::TupleData(ModuleShape shape, int n, std::uint64_t bound)
    : shape_(std::move(shape)), n_(n), bound_(bound), count_(tuple_count(shape_, n)) {
  if (n < 1) throw InvalidInput("tuple length must be >= 1");
  check_bound("tuple enumeration", count_, bound_);
  tables_.resize(count_);
}

const HeightTable& TupleData::table(std::uint64_t index) {
  auto& slot = tables_.at(index);
  if (!slot) slot = height_table(shape_, tuple(index));
  return *slot;
}

const EndoSet& TupleData::endomorphisms() {
  if (!endos_) endos_ = enumerate_endomorphisms(shape_, bound_);
  return *endos_;
}

const EndoSet& TupleData::automorphisms() {
  if (!autos_) autos_ = automorphisms_of(endomorphisms());
  return *autos_;
}

const OrbitPartition& TupleData::brute_partition() {
  if (!partition_) partition_ = brute_orbits(automorphisms(), n_, bound_);
  return *partition_;
}

const ReachabilityTable& TupleData::reachability() {
  if (!reach_) reach_.emplace(endomorphisms(), n_, bound_);
  return *reach_;
}

const FinitePoset<std::size_t>& TupleData::brute_poset() {
  if (!brute_poset_) {
    const auto& orbits = brute_partition().orbits;
    const auto& reach = reachability();
    std::vector<std::size_t> ids(orbits.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    brute_poset_.emplace(std::move(ids), [&](std::size_t i, std::size_t j) {
      return reach.reaches(orbits[j].front(), orbits[i].front());
    });
  }
  return *brute_poset_;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> TupleData::pairs(std::uint64_t full_limit, std::size_t samples,
                                                                     std::uint64_t seed) const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (saturating_pow(count_, 2) <= full_limit) {
    for (std::uint64_t i = 0; i < count_; ++i)
      for (std::uint64_t j = 0; j < count_; ++j) out.emplace_back(i, j);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, count_ - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    std::uint64_t i = pick(rng);
    out.emplace_back(i, pick(rng));
  }
  return out;
}

namespace {

std::string tuple_text(TupleData& data, std::uint64_t index) { return format_tuple(data.shape(), data.tuple(index)); }

SuiteResult fail(std::string name, std::string detail) { return {std::move(name), false, std::move(detail)}; }

FinitePoset<UlmSequence> labelled_poset(std::vector<UlmSequence> labels,
                                        const std::function<bool(std::size_t, std::size_t)>& leq) {
  std::map<UlmSequence, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  return FinitePoset<UlmSequence>(std::move(labels), [&](const UlmSequence& a, const UlmSequence& b) {
    return leq(index.at(a), index.at(b));
  });
}

std::optional<ModuleShape> twin_shape(const ModuleShape& shape) {
  const RingSpec& ring = shape.ring();
  const int k = std::max(shape.exponent(), 1);
  if (ring.backend() == Backend::IntegerLocal)
    return ModuleShape(RingSpec::polynomial_local(ring.residue_field_size(), k), shape.multiplicities());
  if (ring.field_degree() == 1)
    return ModuleShape(RingSpec::integer_local(ring.residue_field_size(), k), shape.multiplicities());
  return std::nullopt;
}

}  // namespace

FinitePoset<UlmSequence> brute_element_poset(const ModuleShape& shape, std::uint64_t bound) {
  TupleData data(shape, 1, bound);
  return brute_element_poset(data);
}

FinitePoset<UlmSequence> brute_element_poset(TupleData& elements) {
  if (elements.n() != 1) throw InvalidInput("element poset needs single-element tuples");
  const ModuleShape& shape = elements.shape();
  const auto& orbits = elements.brute_partition().orbits;
  std::vector<UlmSequence> labels;
  for (const auto& orbit : orbits) labels.push_back(ulm_sequence(shape, shape.element_at(orbit.front())));
  const auto& reach = elements.reachability();
  return labelled_poset(std::move(labels), [&](std::size_t i, std::size_t j) {
    return reach.reaches(orbits[j].front(), orbits[i].front());
  });
}

FinitePoset<UlmSequence> element_orbit_poset(const ModuleShape& shape, std::uint64_t bound) {
  auto orbits = enumerate_tuple_orbits(shape, 1, bound);
  auto poset = degeneration_poset(orbits);
  std::vector<UlmSequence> labels;
  for (const auto& o : orbits) labels.push_back(ulm_sequence(shape, o.representative.front()));
  return labelled_poset(std::move(labels), [&](std::size_t i, std::size_t j) { return poset.leq(i, j); });
}

SuiteResult check_barker(TupleData& data) {
  const std::string name = "barker";
  const auto& brute = data.brute_partition();
  std::map<std::vector<std::uint64_t>, std::size_t> table_id;
  std::vector<std::int64_t> to_brute, from_brute(brute.orbits.size(), -1);
  for (std::uint64_t t = 0; t < data.count(); ++t) {
    auto [it, inserted] = table_id.try_emplace(fingerprint(data.table(t)), table_id.size());
    if (inserted) to_brute.push_back(-1);
    const auto tid = static_cast<std::int64_t>(it->second);
    const std::int64_t bid = brute.orbit_of[t];
    if (to_brute[tid] == -1 && from_brute[bid] == -1) {
      to_brute[tid] = bid;
      from_brute[bid] = tid;
    } else if (to_brute[tid] != bid || from_brute[bid] != tid) {
      return fail(name, "tuple " + tuple_text(data, t) + " splits or merges an automorphism orbit");
    }
  }
  auto orbits = enumerate_tuple_orbits(data.shape(), data.n(), data.count());
  if (orbits.size() != brute.orbits.size())
    return fail(name, std::to_string(orbits.size()) + " table orbits vs " + std::to_string(brute.orbits.size()) +
                          " automorphism orbits");
  for (const auto& o : orbits) {
    std::uint64_t t = tuple_index(data.shape(), o.representative);
    if (brute.orbits[brute.orbit_of[t]].size() != o.size)
      return fail(name, "orbit size mismatch at " + tuple_text(data, t));
  }
  return {name, true, std::to_string(orbits.size()) + " orbits over " + std::to_string(data.count()) + " tuples"};
}

SuiteResult check_degeneration(TupleData& data, const VerifyOptions& opts) {
  const std::string name = "degeneration";
  const auto& reach = data.reachability();
  auto pairs = data.pairs(opts.full_pair_limit, opts.pair_samples, opts.seed);
  std::uint64_t positive = 0;
  for (auto [i, j] : pairs) {
    bool fast = table_degenerates(data.table(i), data.table(j));
    bool slow = reach.reaches(i, j);
    if (fast != slow)
      return fail(name, tuple_text(data, i) + " -> " + tuple_text(data, j) + ": tables say " +
                            (fast ? "true" : "false") + ", endomorphism search says " + (slow ? "true" : "false"));
    positive += fast ? 1 : 0;
  }
  return {name, true, std::to_string(pairs.size()) + " pairs, " + std::to_string(positive) + " degenerations"};
}

SuiteResult check_mutual(TupleData& data, const VerifyOptions& opts) {
  const std::string name = "mutual";
  const auto& reach = data.reachability();
  const auto& brute = data.brute_partition();
  auto pairs = data.pairs(opts.full_pair_limit, opts.pair_samples, opts.seed);
  std::uint64_t mutual = 0;
  for (auto [i, j] : pairs) {
    if (table_degenerates(data.table(i), data.table(j)) && table_degenerates(data.table(j), data.table(i))) {
      ++mutual;
      if (!(data.table(i) == data.table(j)))
        return fail(name, tuple_text(data, i) + " and " + tuple_text(data, j) + " degenerate to each other but differ");
    }
    if (reach.reaches(i, j) && reach.reaches(j, i) && brute.orbit_of[i] != brute.orbit_of[j])
      return fail(name, tuple_text(data, i) + " and " + tuple_text(data, j) +
                            " are mutually reachable but in different automorphism orbits");
  }
  return {name, true, std::to_string(pairs.size()) + " pairs, " + std::to_string(mutual) + " mutual"};
}

SuiteResult check_dictionary(const ModuleShape& shape, std::uint64_t bound) {
  const std::string name = "dictionary";
  auto hf = orbit_poset_elements(shape);
  auto pf = build_Pf(shape);
  auto ideals = enumerate_ideals(pf, bound);
  if (hf.size() != ideals.size())
    return fail(name, "|H_f| = " + std::to_string(hf.size()) + " but |J(P_f)| = " + std::to_string(ideals.size()));
  for (const UlmSequence& s : hf.elements()) {
    OrderIdeal I = ideal_from_sequence(s, shape);
    if (kappa(I) != s) return fail(name, "kappa(I(" + s.to_string() + ")) = " + kappa(I).to_string());
  }
  for (const OrderIdeal& I : ideals.elements()) {
    UlmSequence s = kappa(I);
    if (!is_admissible(shape, s)) return fail(name, "kappa(" + I.to_string() + ") = " + s.to_string() + " is not in H_f");
    if (!(ideal_from_sequence(s, shape) == I)) return fail(name, "I(kappa(" + I.to_string() + ")) differs");
  }
  if (!poset_isomorphism_check(hf, ideals, [&](const UlmSequence& s) { return ideal_from_sequence(s, shape); }))
    return fail(name, "I is not an order isomorphism H_f -> J(P_f)");
  if (!poset_isomorphism_check(ideals, hf, [](const OrderIdeal& I) { return kappa(I); }))
    return fail(name, "kappa is not an order isomorphism J(P_f) -> H_f");

  std::uint64_t element_pairs = 0;
  if (shape.order() <= 4096 && saturating_pow(shape.order(), 2) <= bound) {
    std::vector<HeightTable> tables;
    std::vector<OrderIdeal> element_ideals;
    for (std::uint64_t i = 0; i < shape.order(); ++i) {
      Element a = shape.element_at(i);
      ElementTuple t{a};
      tables.push_back(height_table(shape, t));
      element_ideals.push_back(ideal_of(shape, a));
      if (kappa(element_ideals.back()) != ulm_sequence(shape, a))
        return fail(name, "kappa(I(a)) differs from the Ulm sequence of a = " + shape.format(a));
    }
    for (std::uint64_t i = 0; i < shape.order(); ++i) {
      for (std::uint64_t j = 0; j < shape.order(); ++j, ++element_pairs) {
        if (element_ideals[i].includes(element_ideals[j]) != table_degenerates(tables[i], tables[j]))
          return fail(name, "ideal criterion disagrees on " + shape.format(shape.element_at(i)) + " -> " +
                                shape.format(shape.element_at(j)));
      }
    }
  }
  return {name, true,
          std::to_string(hf.size()) + " sequences and ideals, " + std::to_string(element_pairs) + " element pairs"};
}

SuiteResult check_orbit_count(TupleData& elements, std::uint64_t bound) {
  const std::string name = "orbit-count";
  const ModuleShape& shape = elements.shape();
  const std::size_t hf = enumerate_H_f(shape).size();
  const std::size_t ideals = enumerate_ideals(build_Pf(shape), bound).size();
  const std::size_t brute = elements.brute_partition().orbits.size();
  std::string counts = std::to_string(hf) + " / " + std::to_string(ideals) + " / " + std::to_string(brute);
  if (hf != ideals || ideals != brute) return fail(name, "|H_f| / |J(P_f)| / orbits = " + counts);
  return {name, true, counts};
}

SuiteResult check_element_poset(TupleData& elements, std::uint64_t bound) {
  const std::string name = "element-poset";
  const ModuleShape& shape = elements.shape();
  auto hf = orbit_poset_elements(shape);
  auto brute = brute_element_poset(elements);
  if (!poset_isomorphism_check(brute, hf)) return fail(name, "oracle element poset is not H_f under Ulm labels");
  if (!poset_isomorphism_check(element_orbit_poset(shape, bound), hf))
    return fail(name, "height-table element poset is not H_f under Ulm labels");
  std::string detail = std::to_string(hf.size()) + " orbits";
  if (auto twin = twin_shape(shape)) {
    if (!poset_isomorphism_check(brute_element_poset(*twin, bound), brute))
      return fail(name, "element poset differs from the one over " + to_string(*twin));
    detail += ", matches " + to_string(*twin);
  }
  return {name, true, detail};
}

SuiteResult check_atoms(TupleData& data) {
  const std::string name = "atoms";
  const ModuleShape& shape = data.shape();
  const std::uint64_t bound = data.count();
  auto closed = tuple_atoms(shape, data.n(), std::max<std::uint64_t>(bound, 1));
  auto exhaustive = exhaustive_tuple_atoms(shape, data.n(), bound);
  std::set<std::vector<std::uint64_t>> a, b;
  for (const auto& t : closed) a.insert(fingerprint(height_table(shape, t)));
  for (const auto& t : exhaustive) b.insert(fingerprint(height_table(shape, t)));
  if (a != b)
    return fail(name, std::to_string(a.size()) + " closed-form atoms vs " + std::to_string(b.size()) + " exhaustive");

  // Brute force: nonzero orbits that reach nothing but themselves and zero.
  const auto& brute = data.brute_partition();
  const auto& reach = data.reachability();
  std::set<std::uint32_t> brute_atoms, closed_ids;
  for (std::size_t o = 0; o < brute.orbits.size(); ++o) {
    std::uint64_t rep = brute.orbits[o].front();
    if (rep == 0) continue;
    const auto& targets = reach.targets(rep);
    if (std::all_of(targets.begin(), targets.end(), [&](std::uint64_t u) { return u == 0 || brute.orbit_of[u] == o; }))
      brute_atoms.insert(static_cast<std::uint32_t>(o));
  }
  for (const auto& t : closed) closed_ids.insert(brute.orbit_of[tuple_index(shape, t)]);
  if (brute_atoms != closed_ids)
    return fail(name, std::to_string(brute_atoms.size()) + " atom orbits by endomorphism search, " +
                          std::to_string(closed_ids.size()) + " from the closed form");

  if (!closed.empty()) {
    auto atom_seqs = element_atoms(shape);
    const Scalar p = shape.ring().uniformizer_power(1);
    for (const auto& t : exhaustive) {
      auto first = std::find_if(t.begin(), t.end(), [&](const Element& x) { return !shape.is_zero(x); });
      if (first == t.end()) return fail(name, "zero tuple reported as an atom");
      const Element& x = *first;
      if (!shape.is_zero(shape.scale(p, x)) ||
          std::find(atom_seqs.begin(), atom_seqs.end(), ulm_sequence(shape, x)) == atom_seqs.end())
        return fail(name, "entry " + shape.format(x) + " of " + format_tuple(shape, t) + " is not an element atom");
      for (const Element& y : t) {
        bool multiple = false;
        for (const Scalar& c : shape.ring().enumerate_residues(shape.exponent()))
          if (shape.scale(c, x) == y) multiple = true;
        if (!multiple) return fail(name, format_tuple(shape, t) + " is not a multiple of one atom");
      }
    }
  }
  return {name, true, std::to_string(closed.size()) + " atom orbits"};
}

SuiteResult check_n_invariant(TupleData& data, const VerifyOptions& opts) {
  const std::string name = "n-invariant";
  const int k = data.shape().exponent();
  const int top = data.n() * k * (k + 1);
  auto pairs = data.pairs(opts.full_pair_limit, opts.pair_samples, opts.seed);
  for (auto [i, j] : pairs) {
    const int ni = n_invariant(data.table(i)), nj = n_invariant(data.table(j));
    if (ni < 0 || ni > top) return fail(name, "N(" + tuple_text(data, i) + ") = " + std::to_string(ni) + " out of range");
    if (!table_degenerates(data.table(i), data.table(j))) continue;
    if (ni > nj)
      return fail(name, tuple_text(data, i) + " -> " + tuple_text(data, j) + " but N drops from " +
                            std::to_string(ni) + " to " + std::to_string(nj));
    if (ni == nj && !table_degenerates(data.table(j), data.table(i)))
      return fail(name, tuple_text(data, i) + " -> " + tuple_text(data, j) + " with equal N but no reverse arrow");
  }
  return {name, true, std::to_string(pairs.size()) + " pairs"};
}

SuiteResult check_depth(TupleData& data) {
  const std::string name = "depth";
  const int k = data.shape().exponent();
  const int top = data.n() * k * (k + 1);
  const int depth = chain_depth(data.shape(), data.n(), data.count());
  const int brute = data.brute_poset().height();
  std::string detail = "longest chain " + std::to_string(depth) + ", bound " + std::to_string(top);
  if (depth != brute) return fail(name, detail + ", endomorphism search gives " + std::to_string(brute));
  if (depth > top) return fail(name, detail);
  return {name, true, detail};
}

SuiteResult check_construction(TupleData& data, std::size_t samples, std::uint64_t seed) {
  const std::string name = "construction";
  const ModuleShape& shape = data.shape();
  const auto& brute = data.brute_partition();
  const auto& reach = data.reachability();
  const auto& endos = data.endomorphisms();
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t size) { return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng); };

  for (std::size_t s = 0; s < samples; ++s) {
    std::uint64_t i = pick(data.count());
    const auto& orbit = brute.orbits[brute.orbit_of[i]];
    std::uint64_t j = orbit[pick(orbit.size())];
    ElementTuple a = data.tuple(i), b = data.tuple(j);
    HomTable phi = build_automorphism(shape, a, b);
    std::set<std::uint64_t> images;
    for (std::uint64_t x = 0; x < shape.order(); ++x) images.insert(shape.index_of(phi.apply(shape.element_at(x))));
    if (!phi.is_automorphism() || images.size() != shape.order() || !verify_homomorphism(phi) || phi.apply(a) != b)
      return fail(name, "automorphism for " + format_tuple(shape, a) + " -> " + format_tuple(shape, b) + " fails");
  }
  for (std::size_t s = 0; s < samples; ++s) {
    std::uint64_t i = pick(data.count());
    const auto& targets = reach.targets(i);
    std::uint64_t j = targets[pick(targets.size())];
    ElementTuple a = data.tuple(i), b = data.tuple(j);
    HomTable phi = extend_homomorphism(shape, shape, a, b);
    if (!verify_homomorphism(phi) || phi.apply(a) != b ||
        std::find(endos.maps.begin(), endos.maps.end(), phi) == endos.maps.end())
      return fail(name, "extension for " + format_tuple(shape, a) + " -> " + format_tuple(shape, b) + " fails");
  }
  return {name, true, std::to_string(samples) + " automorphisms, " + std::to_string(samples) + " extensions"};
}

std::vector<SuiteResult> run_verify(const ModuleShape& shape, const VerifyOptions& opts) {
  TupleData data(shape, opts.n, opts.bound);
  std::optional<TupleData> own_elements;
  if (opts.n != 1) own_elements.emplace(shape, 1, opts.bound);
  TupleData& elements = own_elements ? *own_elements : data;
  std::vector<std::pair<std::string, std::function<SuiteResult()>>> suites = {
      {"barker", [&] { return check_barker(data); }},
      {"degeneration", [&] { return check_degeneration(data, opts); }},
      {"mutual", [&] { return check_mutual(data, opts); }},
      {"dictionary", [&] { return check_dictionary(shape, opts.bound); }},
      {"orbit-count", [&] { return check_orbit_count(elements, opts.bound); }},
      {"element-poset", [&] { return check_element_poset(elements, opts.bound); }},
      {"atoms", [&] { return check_atoms(data); }},
      {"n-invariant", [&] { return check_n_invariant(data, opts); }},
      {"depth", [&] { return check_depth(data); }},
      {"construction", [&] { return check_construction(data, opts.construction_samples, opts.seed); }},
  };
  std::vector<SuiteResult> out;
  for (auto& [suite, run] : suites) {
    try {
      out.push_back(run());
    } catch (const InvalidInput&) {
      throw;
    } catch (const BoundExceeded&) {
      throw;
    } catch (const std::exception& e) {
      out.push_back(fail(suite, std::string("exception: ") + e.what()));
    }
  }
  return out;
}

}  // namespace ulm
