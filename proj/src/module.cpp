#include "ulm/module.hpp"

#include <algorithm>
#include <sstream>

#include "ulm/errors.hpp"

namespace ulm {

UlmSequence::UlmSequence(std::vector<int> finite) : finite_(std::move(finite)) {
  for (std::size_t i = 0; i < finite_.size(); ++i) {
    if (finite_[i] < 0) throw InvalidInput("Ulm sequence entries must be non-negative");
    if (i > 0 && finite_[i] <= finite_[i - 1])
      throw InvalidInput("Ulm sequence must be strictly increasing");
  }
}

bool UlmSequence::dominates(const UlmSequence& other) const {
  std::size_t len = std::max(finite_length(), other.finite_length());
  for (std::size_t i = 0; i < len; ++i)
    if ((*this)[i] < other[i]) return false;
  return true;
}

std::string UlmSequence::to_string() const {
  std::string out;
  for (int h : finite_) out += std::to_string(h) + ",";
  return out + "inf";
}

UlmSequence UlmSequence::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '(' && c != ')') s += c;
  std::vector<int> finite;
  std::stringstream ss(s);
  std::string tok;
  bool saw_inf = false;
  while (std::getline(ss, tok, ',')) {
    if (tok == "inf" || tok == "infinity") {
      saw_inf = true;
      continue;
    }
    if (saw_inf) throw InvalidInput("Ulm sequence: finite entry after inf in '" + std::string(text) + "'");
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
      throw InvalidInput("Ulm sequence: bad entry '" + tok + "'");
    finite.push_back(std::stoi(tok));
  }
  return UlmSequence(std::move(finite));
}

ModuleShape::ModuleShape(const RingSpec& ring, const std::map<int, int>& multiplicities) : ring_(ring) {
  for (auto [alpha, m] : multiplicities) {
    if (alpha < 1) throw InvalidInput("cyclic exponent alpha must be >= 1");
    if (m < 0) throw InvalidInput("multiplicity must be >= 0");
    if (m == 0) continue;
    multiplicities_[alpha] = m;
    exponent_ = std::max(exponent_, alpha);
    log_order_ += alpha * m;
    for (int i = 0; i < m; ++i) factors_.push_back({alpha, i});
  }
  ring_ = ring.with_precision(exponent_);
}

int ModuleShape::multiplicity(int alpha) const {
  auto it = multiplicities_.find(alpha);
  return it == multiplicities_.end() ? 0 : it->second;
}

std::uint64_t ModuleShape::order() const {
  return saturating_pow(ring_.residue_field_size(), log_order_);
}

std::map<int, int> ModuleShape::ulm_invariants() const {
  std::map<int, int> out;
  for (auto [alpha, m] : multiplicities_) out[alpha - 1] = m;
  return out;
}

bool ModuleShape::contains(const Element& a) const {
  if (a.coords.size() != factors_.size()) return false;
  for (std::size_t f = 0; f < factors_.size(); ++f)
    if (a.coords[f].code >= ring_.power_of_q(factors_[f].alpha)) return false;
  return true;
}

void ModuleShape::validate(const Element& a) const {
  if (a.coords.size() != factors_.size())
    throw InvalidInput("element has " + std::to_string(a.coords.size()) + " coordinates, shape has " +
                       std::to_string(factors_.size()) + " factors");
  if (!contains(a)) throw InvalidInput("element coordinate not reduced for its cyclic factor");
}

void ModuleShape::validate(std::span<const Element> tuple) const {
  for (const auto& a : tuple) validate(a);
}

Element ModuleShape::zero() const { return Element{std::vector<Scalar>(factors_.size())}; }

Element ModuleShape::generator(std::size_t f) const {
  Element e = zero();
  e.coords.at(f) = Scalar{1};
  return e;
}

Element ModuleShape::add(const Element& a, const Element& b) const {
  Element out = zero();
  for (std::size_t f = 0; f < factors_.size(); ++f)
    out.coords[f] = ring_.reduce(ring_.add(a.coords[f], b.coords[f]), factors_[f].alpha);
  return out;
}

Element ModuleShape::neg(const Element& a) const {
  Element out = zero();
  for (std::size_t f = 0; f < factors_.size(); ++f)
    out.coords[f] = ring_.reduce(ring_.neg(a.coords[f]), factors_[f].alpha);
  return out;
}

Element ModuleShape::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element ModuleShape::scale(Scalar r, const Element& a) const {
  Element out = zero();
  if (exponent_ == 0) return out;
  Scalar rr{r.code % ring_.size()};
  for (std::size_t f = 0; f < factors_.size(); ++f)
    out.coords[f] = ring_.reduce(ring_.mul(rr, a.coords[f]), factors_[f].alpha);
  return out;
}

bool ModuleShape::is_zero(const Element& a) const {
  return std::all_of(a.coords.begin(), a.coords.end(), [](Scalar s) { return s.code == 0; });
}

Element ModuleShape::element_at(std::uint64_t index) const {
  Element out = zero();
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    std::uint64_t radix = ring_.power_of_q(factors_[f].alpha);
    out.coords[f] = Scalar{index % radix};
    index /= radix;
  }
  return out;
}

std::uint64_t ModuleShape::index_of(const Element& a) const {
  std::uint64_t index = 0;
  for (std::size_t f = factors_.size(); f-- > 0;)
    index = index * ring_.power_of_q(factors_[f].alpha) + a.coords[f].code;
  return index;
}

std::vector<Element> ModuleShape::socle() const {
  const std::uint64_t q = ring_.residue_field_size();
  const std::uint64_t count = saturating_pow(q, factors_.size());
  std::vector<Element> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Element e = zero();
    std::uint64_t rest = idx;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      e.coords[f] = Scalar{(rest % q) * ring_.power_of_q(factors_[f].alpha - 1)};
      rest /= q;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string ModuleShape::format(const Element& a) const {
  std::string out = "(";
  for (std::size_t f = 0; f < a.coords.size(); ++f) {
    if (f) out += ",";
    out += ring_.format(a.coords[f]);
  }
  return out + ")";
}

std::string to_string(const ModuleShape& shape) {
  std::string out;
  for (auto [alpha, m] : shape.multiplicities()) {
    if (!out.empty()) out += " + ";
    out += "(R/p^" + std::to_string(alpha) + ")^" + std::to_string(m);
  }
  if (out.empty()) out = "0";
  std::string base = shape.ring().backend() == Backend::IntegerLocal
                         ? "p=" + std::to_string(shape.ring().characteristic())
                         : "F_" + std::to_string(shape.ring().residue_field_size()) + "[t]";
  return out + " over " + base;
}

Height height(const ModuleShape& shape, const Element& a) {
  shape.validate(a);
  Height h = Height::infinity();
  for (const Scalar& c : a.coords) h = std::min(h, shape.ring().valuation(c));
  return h;
}

UlmSequence ulm_sequence(const ModuleShape& shape, const Element& a) {
  shape.validate(a);
  std::vector<int> finite;
  const Scalar p = shape.ring().uniformizer_power(1);
  Element x = a;
  while (!shape.is_zero(x)) {
    finite.push_back(height(shape, x).value());
    x = shape.scale(p, x);
  }
  return UlmSequence(std::move(finite));
}

std::map<int, int> ulm_invariants(const ModuleShape& shape) { return shape.ulm_invariants(); }

Element linear_combination(const ModuleShape& shape, std::span<const Element> tuple,
                           std::span<const Scalar> coeffs) {
  if (tuple.size() != coeffs.size())
    throw InvalidInput("linear_combination: " + std::to_string(coeffs.size()) + " coefficients for " +
                       std::to_string(tuple.size()) + " elements");
  Element sum = shape.zero();
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (coeffs[i].code == 0) continue;
    sum = shape.add(sum, shape.scale(coeffs[i], tuple[i]));
  }
  return sum;
}

std::map<std::uint64_t, ModuleShape> primary_decomposition(std::span<const std::uint64_t> cyclic_orders) {
  std::map<std::uint64_t, std::map<int, int>> parts;
  for (std::uint64_t n : cyclic_orders) {
    if (n <= 1) throw InvalidInput("cyclic orders must be > 1, got " + std::to_string(n));
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      if (e > 0) ++parts[d][e];
    }
    if (n > 1) ++parts[n][1];
  }
  std::map<std::uint64_t, ModuleShape> out;
  for (auto& [p, mult] : parts) out.emplace(p, ModuleShape(RingSpec::integer_local(p, 1), mult));
  return out;
}

std::uint64_t tuple_count(const ModuleShape& shape, int n) {
  return saturating_pow(shape.order(), static_cast<std::uint64_t>(n));
}

ElementTuple tuple_at(const ModuleShape& shape, int n, std::uint64_t index) {
  const std::uint64_t order = shape.order();
  ElementTuple out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    out.push_back(shape.element_at(index % order));
    index /= order;
  }
  return out;
}

std::uint64_t tuple_index(const ModuleShape& shape, std::span<const Element> tuple) {
  const std::uint64_t order = shape.order();
  std::uint64_t index = 0;
  for (std::size_t i = tuple.size(); i-- > 0;) index = index * order + shape.index_of(tuple[i]);
  return index;
}

std::string format_tuple(const ModuleShape& shape, std::span<const Element> tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ",";
    out += shape.format(tuple[i]);
  }
  return out + ")";
}

}  // namespace ulm
