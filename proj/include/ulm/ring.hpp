#pragma once

/**
 * @file ring.hpp
 * @brief Residue arithmetic in R/p^K for the two supported discrete valuation rings.
 *
 * - integer-local: R = Z_(p), so R/p^K = Z/p^K.
 * - polynomial-local: R = F_q[t]_(t), so R/p^K = F_q[t]/(t^K).
 *
 * Every residue is stored as a single code in [0, q^K). For the integer backend
 * the code is the integer itself; for the polynomial backend it is
 * sum c_i q^i, with c_i the F_q coefficient of t^i. In both cases the base-q
 * digits of the code are the uniformizer expansion, so reduction mod p^a,
 * valuation, and multiplication by p^e are the same digit operations for both
 * backends. Only addition and multiplication differ.
 *
 * F_q for non-prime q is realised as F_p[x]/(g) where g is the monic
 * irreducible of degree log_p q whose coefficient code sum g_i p^i (i < deg)
 * is least.
 */

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace ulm {

enum class Backend { IntegerLocal, PolynomialLocal };

/// A natural number or infinity. Used for valuations and heights.
class Height {
 public:
  constexpr Height() = default;
  constexpr explicit Height(int value) : value_(value) {}

  static constexpr Height infinity() { return Height(); }

  constexpr bool is_infinite() const { return value_ == kInfinite; }
  constexpr int value() const { return value_; }

  friend constexpr auto operator<=>(Height, Height) = default;

 private:
  static constexpr int kInfinite = std::numeric_limits<int>::max();
  int value_ = kInfinite;
};

std::string to_string(Height h);

struct Scalar {
  std::uint64_t code = 0;
  friend constexpr auto operator<=>(const Scalar&, const Scalar&) = default;
};

namespace detail {
struct RingData;
}

class RingSpec {
 public:
  /// Z/p^K. Throws InvalidInput unless p is prime and p^K < 2^31.
  static RingSpec integer_local(std::uint64_t p, int precision);
  /// F_q[t]/(t^K). Throws InvalidInput unless q is a prime power <= 1024 and q^K < 2^31.
  static RingSpec polynomial_local(std::uint64_t q, int precision);

  Backend backend() const;
  std::uint64_t residue_field_size() const;
  std::uint64_t characteristic() const;
  /// Degree of F_q over F_p.
  int field_degree() const;
  int precision() const;
  /// q^K, the number of residues.
  std::uint64_t size() const;
  /// q^e for 0 <= e <= K.
  std::uint64_t power_of_q(int e) const;
  /// Coefficients (low to high, monic) of the polynomial defining F_q; {0,1} for prime q.
  const std::vector<std::uint64_t>& field_modulus() const;

  RingSpec with_precision(int precision) const;
  /// Same backend and residue field (precision may differ).
  bool same_base(const RingSpec& other) const;

  bool contains(Scalar x) const { return x.code < size(); }

  Scalar add(Scalar x, Scalar y) const;
  Scalar sub(Scalar x, Scalar y) const;
  Scalar neg(Scalar x) const;
  Scalar mul(Scalar x, Scalar y) const;

  /// x mod p^a (a <= K). Reduction is a ring map R/p^K -> R/p^a.
  Scalar reduce(Scalar x, int a) const;
  /// Largest v with x in p^v (R/p^K); infinity for zero.
  Height valuation(Scalar x) const;
  /// p^e, or zero when e >= K.
  Scalar uniformizer_power(int e) const;
  /// The unique y with x = reduce(x, e) + p^e y and y < q^(K-e).
  Scalar shift_down(Scalar x, int e) const;
  bool is_unit(Scalar x) const;
  /// Throws std::domain_error for non-units.
  Scalar unit_inverse(Scalar x) const;

  /// All q^precision residues of R/p^precision, in increasing code order.
  std::vector<Scalar> enumerate_residues(int precision) const;

  /// Human readable: "6" or "1+2t+t^2".
  std::string format(Scalar x) const;
  /// Base-q digits (coefficients of the uniformizer expansion), length K.
  std::vector<std::uint64_t> digits(Scalar x) const;
  Scalar from_digits(const std::vector<std::uint64_t>& digits) const;

  friend bool operator==(const RingSpec& a, const RingSpec& b);

 private:
  explicit RingSpec(std::shared_ptr<const detail::RingData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::RingData> data_;
};

std::string to_string(const RingSpec& ring);

/// A scalar bundled with its ring; arithmetic between different rings is rejected.
struct Residue {
  RingSpec ring;
  Scalar value;
};

enum class ArithOp { Add, Mul, Neg };

/// Throws InvalidInput on mismatched rings or out-of-range representations.
/// For Neg the second operand is ignored apart from the ring check.
Residue scalar_arith(ArithOp op, const Residue& x, const Residue& y);

bool is_prime(std::uint64_t n);

}  // namespace ulm
