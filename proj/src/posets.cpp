#include "ulm/posets.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace ulm {

std::string to_string(PElem x) { return "(" + std::to_string(x.v) + "," + std::to_string(x.alpha) + ")"; }

bool p_order(PElem x, PElem y) { return y.v >= x.v && y.alpha - y.v <= x.alpha - x.v; }

namespace {

FinitePoset<PElem> make_p_poset(const std::vector<int>& alphas) {
  std::vector<PElem> elems;
  for (int alpha : alphas)
    for (int v = 0; v < alpha; ++v) elems.push_back({v, alpha});
  return FinitePoset<PElem>(std::move(elems), [](const PElem& x, const PElem& y) { return p_order(y, x); });
}

}  // namespace

FinitePoset<PElem> fundamental_poset(int max_alpha) {
  std::vector<int> alphas;
  for (int a = 1; a <= max_alpha; ++a) alphas.push_back(a);
  return make_p_poset(alphas);
}

FinitePoset<PElem> build_Pf(const ModuleShape& shape) {
  std::vector<int> alphas;
  for (auto [alpha, m] : shape.multiplicities())
    if (m > 0) alphas.push_back(alpha);
  return make_p_poset(alphas);
}

OrderIdeal OrderIdeal::generated(const FinitePoset<PElem>& ambient, std::span<const PElem> generators) {
  for (PElem g : generators)
    if (!ambient.index_of(g)) throw InvalidInput("ideal generator " + ulm::to_string(g) + " is not in the poset");
  std::vector<PElem> members;
  for (const PElem& x : ambient.elements())
    if (std::any_of(generators.begin(), generators.end(), [&](PElem g) { return p_order(g, x); }))
      members.push_back(x);
  return from_downset(std::move(members));
}

OrderIdeal OrderIdeal::from_downset(std::vector<PElem> members) {
  OrderIdeal out;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (const PElem& x : members) {
    bool maximal = std::none_of(members.begin(), members.end(), [&](PElem y) { return y != x && p_order(y, x); });
    if (maximal) out.maximal_.push_back(x);
  }
  std::sort(out.maximal_.begin(), out.maximal_.end(),
            [](PElem a, PElem b) { return std::tie(a.alpha, a.v) < std::tie(b.alpha, b.v); });
  out.members_ = std::move(members);
  return out;
}

bool OrderIdeal::contains(PElem x) const { return std::binary_search(members_.begin(), members_.end(), x); }

bool OrderIdeal::includes(const OrderIdeal& other) const {
  return std::includes(members_.begin(), members_.end(), other.members_.begin(), other.members_.end());
}

std::string OrderIdeal::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < maximal_.size(); ++i) {
    if (i) out += ",";
    out += ulm::to_string(maximal_[i]);
  }
  return out + "}";
}

std::vector<PElem> parse_pelems(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw InvalidInput("ideal: unbalanced braces in '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<PElem> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == ',') {
      ++pos;
      continue;
    }
    if (s[pos] != '(') throw InvalidInput("ideal: expected '(' in '" + std::string(text) + "'");
    std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw InvalidInput("ideal: missing ')' in '" + std::string(text) + "'");
    std::string inner = s.substr(pos + 1, close - pos - 1);
    std::size_t comma = inner.find(',');
    if (comma == std::string::npos) throw InvalidInput("ideal: element needs two entries");
    std::string a = inner.substr(0, comma), b = inner.substr(comma + 1);
    auto numeric = [](const std::string& x) {
      return !x.empty() && std::all_of(x.begin(), x.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (!numeric(a) || !numeric(b)) throw InvalidInput("ideal: non-numeric entry in '" + inner + "'");
    PElem x{std::stoi(a), std::stoi(b)};
    if (x.v >= x.alpha) throw InvalidInput("ideal: " + to_string(x) + " needs v < alpha");
    out.push_back(x);
    pos = close + 1;
  }
  return out;
}

OrderIdeal ideal_of(const ModuleShape& shape, const Element& a) {
  shape.validate(a);
  std::vector<PElem> gens;
  for (std::size_t f = 0; f < shape.factor_count(); ++f) {
    if (a.coords[f].code == 0) continue;
    gens.push_back({shape.ring().valuation(a.coords[f]).value(), shape.factor_exponent(f)});
  }
  return OrderIdeal::generated(build_Pf(shape), gens);
}

bool ideal_criterion(const ModuleShape& shape, const Element& a, const Element& b) {
  return ideal_of(shape, a).includes(ideal_of(shape, b));
}

FinitePoset<OrderIdeal> enumerate_ideals(const FinitePoset<PElem>& pf, std::uint64_t bound) {
  const std::size_t n = pf.size();
  // Linear extension: an element comes after everything below it.
  std::vector<std::size_t> order(n), below(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
    for (std::size_t j = 0; j < n; ++j) below[i] += pf.less(j, i) ? 1 : 0;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });

  std::vector<OrderIdeal> ideals;
  std::vector<char> chosen(n, 0);
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      std::vector<PElem> members;
      for (std::size_t i = 0; i < n; ++i)
        if (chosen[i]) members.push_back(pf[i]);
      ideals.push_back(OrderIdeal::from_downset(std::move(members)));
      check_bound("order ideal enumeration", ideals.size(), bound);
      return;
    }
    const std::size_t x = order[depth];
    self(self, depth + 1);
    bool allowed = true;
    for (std::size_t j = 0; j < n && allowed; ++j)
      if (pf.less(j, x) && !chosen[j]) allowed = false;
    if (allowed) {
      chosen[x] = 1;
      self(self, depth + 1);
      chosen[x] = 0;
    }
  };
  recurse(recurse, 0);
  std::sort(ideals.begin(), ideals.end(), [](const OrderIdeal& a, const OrderIdeal& b) {
    if (a.members().size() != b.members().size()) return a.members().size() < b.members().size();
    return a.members() < b.members();
  });
  return FinitePoset<OrderIdeal>(std::move(ideals),
                                 [](const OrderIdeal& a, const OrderIdeal& b) { return b.includes(a); });
}

bool is_admissible(const ModuleShape& shape, const UlmSequence& seq) {
  const auto& h = seq.finite();
  for (int x : h)
    if (x >= shape.exponent()) return false;
  for (std::size_t i = 1; i <= h.size(); ++i) {
    bool gap = i == h.size() || h[i] > h[i - 1] + 1;
    if (gap && shape.ulm_invariant(h[i - 1]) == 0) return false;
  }
  return true;
}

std::vector<UlmSequence> enumerate_H_f(const ModuleShape& shape) {
  const int k = shape.exponent();
  if (k > 30) throw BoundExceeded("H_f enumeration over 2^k subsets", std::uint64_t{1} << std::min(k, 63), kDefaultBound);
  std::vector<UlmSequence> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<int> finite;
    for (int b = 0; b < k; ++b)
      if (mask >> b & 1) finite.push_back(b);
    UlmSequence seq(std::move(finite));
    if (is_admissible(shape, seq)) out.push_back(std::move(seq));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FinitePoset<UlmSequence> orbit_poset_elements(const ModuleShape& shape) {
  return FinitePoset<UlmSequence>(enumerate_H_f(shape),
                                  [](const UlmSequence& a, const UlmSequence& b) { return a.dominates(b); });
}

UlmSequence kappa(const OrderIdeal& ideal) {
  std::vector<int> finite;
  for (int n = 0;; ++n) {
    Height h = Height::infinity();
    for (const PElem& x : ideal.members())
      if (x.v + n < x.alpha) h = std::min(h, Height(x.v + n));
    if (h.is_infinite()) break;
    finite.push_back(h.value());
  }
  return UlmSequence(std::move(finite));
}

OrderIdeal ideal_from_sequence(const UlmSequence& seq, const ModuleShape& shape) {
  if (!is_admissible(shape, seq))
    throw InvalidInput("sequence " + seq.to_string() + " is not an admissible Ulm sequence for " + to_string(shape));
  const auto& h = seq.finite();
  std::vector<PElem> gens;
  for (std::size_t i = 1; i <= h.size(); ++i) {
    bool gap = i == h.size() || h[i] > h[i - 1] + 1;
    if (gap) gens.push_back({h[i - 1] - static_cast<int>(i) + 1, h[i - 1] + 1});
  }
  return OrderIdeal::generated(build_Pf(shape), gens);
}

}  // namespace ulm
