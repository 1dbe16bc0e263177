#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ulm/ring.hpp"

namespace ulm {

/// Coordinates of an element of A = (+)_alpha (R/p^alpha)^{m_alpha}, one per
/// cyclic factor in the shape's factor order. Coordinate f is reduced mod p^alpha_f.
struct Element {
  std::vector<Scalar> coords;
  friend auto operator<=>(const Element&, const Element&) = default;
};

using ElementTuple = std::vector<Element>;

/// Finite part h_0 < ... < h_m of an Ulm sequence; every later term is infinite.
class UlmSequence {
 public:
  UlmSequence() = default;
  explicit UlmSequence(std::vector<int> finite);

  const std::vector<int>& finite() const { return finite_; }
  std::size_t finite_length() const { return finite_.size(); }
  Height operator[](std::size_t i) const {
    return i < finite_.size() ? Height(finite_[i]) : Height::infinity();
  }

  /// Termwise: (*this)_n >= other_n for all n.
  bool dominates(const UlmSequence& other) const;

  /// "0,1,inf"; the zero element's sequence prints as "inf".
  std::string to_string() const;
  /// Accepts "0,1,inf", "(0,1,inf)", "inf", "(inf)". Throws InvalidInput.
  static UlmSequence parse(std::string_view text);

  friend auto operator<=>(const UlmSequence&, const UlmSequence&) = default;

 private:
  std::vector<int> finite_;
};

struct Factor {
  int alpha;  // exponent of the cyclic factor R/p^alpha
  int index;  // position within the alpha block
};

class ModuleShape {
 public:
  /// The ring's backend and residue field are kept; its precision is replaced
  /// by the exponent of the module. Zero multiplicities are dropped.
  ModuleShape(const RingSpec& ring, const std::map<int, int>& multiplicities);

  const RingSpec& ring() const { return ring_; }
  const std::map<int, int>& multiplicities() const { return multiplicities_; }
  int multiplicity(int alpha) const;
  /// Largest alpha with m_alpha > 0; 0 for the zero module.
  int exponent() const { return exponent_; }
  bool is_zero() const { return factors_.empty(); }

  std::size_t factor_count() const { return factors_.size(); }
  const std::vector<Factor>& factors() const { return factors_; }
  int factor_exponent(std::size_t f) const { return factors_[f].alpha; }

  /// log_q |A| = sum alpha m_alpha.
  int log_order() const { return log_order_; }
  /// |A|; saturates at UINT64_MAX.
  std::uint64_t order() const;

  /// f_beta = dim P(A)_beta / P(A)_{beta+1} = m_{beta+1}; only positive entries.
  std::map<int, int> ulm_invariants() const;
  int ulm_invariant(int beta) const { return multiplicity(beta + 1); }

  bool contains(const Element& a) const;
  /// Throws InvalidInput if a is not a reduced element of this shape.
  void validate(const Element& a) const;
  void validate(std::span<const Element> tuple) const;

  Element zero() const;
  Element generator(std::size_t f) const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  /// r a; r may be given at any precision, it is reduced per coordinate.
  Element scale(Scalar r, const Element& a) const;
  bool is_zero(const Element& a) const;

  /// Elements indexed by mixed radix, factor 0 least significant.
  Element element_at(std::uint64_t index) const;
  std::uint64_t index_of(const Element& a) const;

  /// Elements killed by p: each coordinate is a multiple of p^(alpha-1).
  std::vector<Element> socle() const;

  std::string format(const Element& a) const;

  friend bool operator==(const ModuleShape& a, const ModuleShape& b) {
    return a.ring_ == b.ring_ && a.multiplicities_ == b.multiplicities_;
  }

 private:
  RingSpec ring_;
  std::map<int, int> multiplicities_;
  std::vector<Factor> factors_;
  int exponent_ = 0;
  int log_order_ = 0;
};

std::string to_string(const ModuleShape& shape);

Height height(const ModuleShape& shape, const Element& a);
UlmSequence ulm_sequence(const ModuleShape& shape, const Element& a);
std::map<int, int> ulm_invariants(const ModuleShape& shape);

/// sum r_i a_i. Throws InvalidInput on a length mismatch.
Element linear_combination(const ModuleShape& shape, std::span<const Element> tuple,
                           std::span<const Scalar> coeffs);

/// p-primary parts of (+) Z/n_i over the integer-local rings.
std::map<std::uint64_t, ModuleShape> primary_decomposition(std::span<const std::uint64_t> cyclic_orders);

/// n-tuples indexed by mixed radix over element indices, entry 0 least significant.
std::uint64_t tuple_count(const ModuleShape& shape, int n);
ElementTuple tuple_at(const ModuleShape& shape, int n, std::uint64_t index);
std::uint64_t tuple_index(const ModuleShape& shape, std::span<const Element> tuple);

std::string format_tuple(const ModuleShape& shape, std::span<const Element> tuple);

}  // namespace ulm
