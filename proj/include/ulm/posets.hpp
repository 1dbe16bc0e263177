#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ulm/errors.hpp"
#include "ulm/finite_poset.hpp"
#include "ulm/module.hpp"

namespace ulm {

/// (v, alpha): the orbit of p^v in R/p^alpha, 0 <= v < alpha.
struct PElem {
  int v;
  int alpha;
  friend auto operator<=>(const PElem&, const PElem&) = default;
};

std::string to_string(PElem x);

/// x >= y in the fundamental poset: y.v >= x.v and y.alpha - y.v <= x.alpha - x.v.
bool p_order(PElem x, PElem y);

/// The fundamental poset restricted to alpha <= max_alpha.
FinitePoset<PElem> fundamental_poset(int max_alpha);
/// P_f: the (v, alpha) with m_alpha > 0, ordered by p_order.
FinitePoset<PElem> build_Pf(const ModuleShape& shape);

/// A downward closed subset of a fixed subposet of P. Canonically identified
/// by its maximal antichain; the full downset is kept alongside.
class OrderIdeal {
 public:
  OrderIdeal() = default;

  /// Downset of `generators` inside `ambient`. Throws InvalidInput if a
  /// generator is not an element of `ambient`.
  static OrderIdeal generated(const FinitePoset<PElem>& ambient, std::span<const PElem> generators);
  /// Wraps a set already known to be downward closed.
  static OrderIdeal from_downset(std::vector<PElem> members);

  /// Sorted by alpha, hence by v as well.
  const std::vector<PElem>& maximal() const { return maximal_; }
  const std::vector<PElem>& members() const { return members_; }
  bool empty() const { return members_.empty(); }

  bool contains(PElem x) const;
  /// Superset test.
  bool includes(const OrderIdeal& other) const;

  /// "{(0,1),(1,3)}" listing the maximal antichain.
  std::string to_string() const;

  friend bool operator==(const OrderIdeal& a, const OrderIdeal& b) { return a.members_ == b.members_; }

 private:
  std::vector<PElem> maximal_;
  std::vector<PElem> members_;
};

/// Parses "{(0,1),(1,3)}" (braces optional, "{}" for empty). Throws InvalidInput.
std::vector<PElem> parse_pelems(std::string_view text);

/// I(a): the ideal generated by (valuation, alpha) of each nonzero coordinate.
OrderIdeal ideal_of(const ModuleShape& shape, const Element& a);

/// a -> b iff I(a) contains I(b).
bool ideal_criterion(const ModuleShape& shape, const Element& a, const Element& b);

/// J(pf) ordered by inclusion. Throws BoundExceeded past `bound` ideals.
FinitePoset<OrderIdeal> enumerate_ideals(const FinitePoset<PElem>& pf, std::uint64_t bound = kDefaultBound);

/// Membership in H_f: finite entries below the exponent, and f_{h_{n-1}} > 0
/// at every gap h_n > h_{n-1} + 1, including the jump to infinity.
bool is_admissible(const ModuleShape& shape, const UlmSequence& seq);
/// H_f, including the all-infinite sequence; sorted.
std::vector<UlmSequence> enumerate_H_f(const ModuleShape& shape);
/// H_f with s <= s' iff s_n >= s'_n for all n.
FinitePoset<UlmSequence> orbit_poset_elements(const ModuleShape& shape);

/// kappa(I)_n = h(I^n), where I^n shifts every (v, alpha) to (v + n, alpha)
/// and drops whatever leaves P.
UlmSequence kappa(const OrderIdeal& ideal);

/// The ideal generated by (h_{i-1} - i + 1, h_{i-1} + 1) over the gaps
/// h_i > h_{i-1} + 1, where the first infinite term counts as a gap.
/// Throws InvalidInput for sequences outside H_f.
OrderIdeal ideal_from_sequence(const UlmSequence& seq, const ModuleShape& shape);

}  // namespace ulm
