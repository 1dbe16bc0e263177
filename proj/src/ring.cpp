#include "ulm/ring.hpp"

#include <array>
#include <stdexcept>

#include "ulm/errors.hpp"

namespace ulm {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string to_string(Height h) {
  return h.is_infinite() ? "inf" : std::to_string(h.value());
}

namespace {

// Polynomials over F_p, coefficients low to high.
using FpPoly = std::vector<std::uint64_t>;

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly poly_mod(FpPoly a, const FpPoly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;  // m monic, nonzero
  while (a.size() > dm) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
    }
    trim(a);
  }
  return a;
}

FpPoly decode(std::uint64_t code, std::uint64_t p, int len) {
  FpPoly f(len);
  for (int i = 0; i < len; ++i) {
    f[i] = code % p;
    code /= p;
  }
  return f;
}

bool irreducible(const FpPoly& g, std::uint64_t p) {
  const int deg = static_cast<int>(g.size()) - 1;
  for (int d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = saturating_pow(p, d);
    for (std::uint64_t c = 0; c < count; ++c) {
      FpPoly divisor = decode(c, p, d);
      divisor.push_back(1);
      if (poly_mod(g, divisor, p).empty()) return false;
    }
  }
  return true;
}

FpPoly least_irreducible(std::uint64_t p, int degree) {
  std::uint64_t count = saturating_pow(p, degree);
  for (std::uint64_t c = 0; c < count; ++c) {
    FpPoly g = decode(c, p, degree);
    g.push_back(1);
    if (irreducible(g, p)) return g;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

namespace detail {

struct RingData {
  Backend backend = Backend::IntegerLocal;
  std::uint64_t p = 2;
  std::uint64_t q = 2;
  int degree = 1;
  int precision = 1;
  std::vector<std::uint64_t> qpow;  // q^0 .. q^K
  std::vector<std::uint64_t> modulus;

  // F_q tables (polynomial backend only).
  std::vector<std::uint32_t> fadd, fmul, fneg, finv;

  std::uint64_t size() const { return qpow.back(); }
};

}  // namespace detail

namespace {

constexpr std::uint64_t kMaxRingSize = std::uint64_t{1} << 31;

std::shared_ptr<detail::RingData> make_data(Backend backend, std::uint64_t p, int degree,
                                            std::vector<std::uint64_t> modulus, int precision) {
  if (precision < 0) throw InvalidInput("precision must be non-negative");
  auto d = std::make_shared<detail::RingData>();
  d->backend = backend;
  d->p = p;
  d->degree = degree;
  d->q = saturating_pow(p, degree);
  d->precision = precision;
  d->qpow.push_back(1);
  for (int i = 0; i < precision; ++i) {
    if (d->qpow.back() > kMaxRingSize / d->q)
      throw InvalidInput("residue ring too large: q^K must stay below 2^31");
    d->qpow.push_back(d->qpow.back() * d->q);
  }
  d->modulus = std::move(modulus);
  return d;
}

void build_field_tables(detail::RingData& d) {
  const std::uint64_t q = d.q, p = d.p;
  const int e = d.degree;
  d.fadd.resize(q * q);
  d.fmul.resize(q * q);
  d.fneg.resize(q);
  d.finv.assign(q, 0);
  std::vector<FpPoly> polys;
  polys.reserve(q);
  for (std::uint64_t x = 0; x < q; ++x) polys.push_back(decode(x, p, e));
  auto encode = [&](const FpPoly& f) {
    std::uint64_t code = 0;
    for (std::size_t i = f.size(); i-- > 0;) code = code * p + f[i];
    return code;
  };
  for (std::uint64_t x = 0; x < q; ++x) {
    FpPoly n(e);
    for (int i = 0; i < e; ++i) n[i] = (p - polys[x][i]) % p;
    d.fneg[x] = static_cast<std::uint32_t>(encode(n));
    for (std::uint64_t y = 0; y < q; ++y) {
      FpPoly s(e);
      for (int i = 0; i < e; ++i) s[i] = (polys[x][i] + polys[y][i]) % p;
      d.fadd[x * q + y] = static_cast<std::uint32_t>(encode(s));
      FpPoly prod(2 * e, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + polys[x][i] * polys[y][j]) % p;
      d.fmul[x * q + y] = static_cast<std::uint32_t>(encode(poly_mod(prod, d.modulus, p)));
    }
  }
  for (std::uint64_t x = 1; x < q; ++x)
    for (std::uint64_t y = 1; y < q; ++y)
      if (d.fmul[x * q + y] == 1) d.finv[x] = static_cast<std::uint32_t>(y);
}

}  // namespace

RingSpec RingSpec::integer_local(std::uint64_t p, int precision) {
  if (!is_prime(p)) throw InvalidInput("integer-local ring needs a prime, got " + std::to_string(p));
  return RingSpec(make_data(Backend::IntegerLocal, p, 1, {0, 1}, precision));
}

RingSpec RingSpec::polynomial_local(std::uint64_t q, int precision) {
  if (q < 2 || q > 1024) throw InvalidInput("polynomial-local ring needs 2 <= q <= 1024");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  int degree = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++degree;
  }
  if (rest != 1) throw InvalidInput("polynomial-local ring needs a prime power, got " + std::to_string(q));
  FpPoly modulus = degree == 1 ? FpPoly{0, 1} : least_irreducible(p, degree);
  auto d = make_data(Backend::PolynomialLocal, p, degree, modulus, precision);
  build_field_tables(*d);
  return RingSpec(d);
}

Backend RingSpec::backend() const { return data_->backend; }
std::uint64_t RingSpec::residue_field_size() const { return data_->q; }
std::uint64_t RingSpec::characteristic() const { return data_->p; }
int RingSpec::field_degree() const { return data_->degree; }
int RingSpec::precision() const { return data_->precision; }
std::uint64_t RingSpec::size() const { return data_->size(); }
const std::vector<std::uint64_t>& RingSpec::field_modulus() const { return data_->modulus; }

std::uint64_t RingSpec::power_of_q(int e) const {
  if (e < 0 || e > data_->precision) throw std::out_of_range("power_of_q: exponent out of range");
  return data_->qpow[e];
}

RingSpec RingSpec::with_precision(int precision) const {
  if (precision == data_->precision) return *this;
  auto d = make_data(data_->backend, data_->p, data_->degree, data_->modulus, precision);
  d->fadd = data_->fadd;
  d->fmul = data_->fmul;
  d->fneg = data_->fneg;
  d->finv = data_->finv;
  return RingSpec(d);
}

bool RingSpec::same_base(const RingSpec& other) const {
  return data_->backend == other.data_->backend && data_->q == other.data_->q;
}

bool operator==(const RingSpec& a, const RingSpec& b) {
  return a.same_base(b) && a.precision() == b.precision();
}

Scalar RingSpec::add(Scalar x, Scalar y) const {
  const auto& d = *data_;
  if (d.backend == Backend::IntegerLocal) return {(x.code + y.code) % d.size()};
  std::uint64_t out = 0;
  for (int i = d.precision - 1; i >= 0; --i) {
    std::uint64_t dx = x.code / d.qpow[i] % d.q, dy = y.code / d.qpow[i] % d.q;
    out = out * d.q + d.fadd[dx * d.q + dy];
  }
  return {out};
}

Scalar RingSpec::neg(Scalar x) const {
  const auto& d = *data_;
  if (d.backend == Backend::IntegerLocal) return {(d.size() - x.code) % d.size()};
  std::uint64_t out = 0;
  for (int i = d.precision - 1; i >= 0; --i) out = out * d.q + d.fneg[x.code / d.qpow[i] % d.q];
  return {out};
}

Scalar RingSpec::sub(Scalar x, Scalar y) const { return add(x, neg(y)); }

Scalar RingSpec::mul(Scalar x, Scalar y) const {
  const auto& d = *data_;
  if (d.backend == Backend::IntegerLocal) return {x.code * y.code % d.size()};
  // q >= 2 and q^K < 2^31, so K <= 31.
  const int K = d.precision;
  std::array<std::uint64_t, 32> dx{}, dy{}, prod{};
  for (int i = 0; i < K; ++i) {
    dx[i] = x.code / d.qpow[i] % d.q;
    dy[i] = y.code / d.qpow[i] % d.q;
  }
  for (int i = 0; i < K; ++i) {
    if (dx[i] == 0) continue;
    for (int j = 0; i + j < K; ++j) {
      if (dy[j] == 0) continue;
      prod[i + j] = d.fadd[prod[i + j] * d.q + d.fmul[dx[i] * d.q + dy[j]]];
    }
  }
  std::uint64_t code = 0;
  for (int i = K; i-- > 0;) code = code * d.q + prod[i];
  return {code};
}

Scalar RingSpec::reduce(Scalar x, int a) const {
  if (a >= data_->precision) return x;
  return {x.code % data_->qpow[a]};
}

Height RingSpec::valuation(Scalar x) const {
  if (x.code == 0) return Height::infinity();
  int v = 0;
  std::uint64_t c = x.code;
  while (c % data_->q == 0) {
    c /= data_->q;
    ++v;
  }
  return Height(v);
}

Scalar RingSpec::uniformizer_power(int e) const {
  if (e >= data_->precision) return {0};
  return {data_->qpow[e]};
}

Scalar RingSpec::shift_down(Scalar x, int e) const {
  if (e >= data_->precision) return {0};
  return {x.code / data_->qpow[e]};
}

bool RingSpec::is_unit(Scalar x) const { return data_->precision > 0 && x.code % data_->q != 0; }

Scalar RingSpec::unit_inverse(Scalar x) const {
  if (!is_unit(x)) throw std::domain_error("unit_inverse: " + format(x) + " is not a unit");
  const auto& d = *data_;
  if (d.backend == Backend::IntegerLocal) {
    // Extended Euclid on (x, p^K).
    std::int64_t r0 = static_cast<std::int64_t>(d.size()), r1 = static_cast<std::int64_t>(x.code);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t quo = r0 / r1;
      std::int64_t r2 = r0 - quo * r1, s2 = s0 - quo * s1;
      r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    std::int64_t m = static_cast<std::int64_t>(d.size());
    return {static_cast<std::uint64_t>(((s0 % m) + m) % m)};
  }
  // Power series inversion: w_0 = u_0^{-1}, w_n = -u_0^{-1} sum_{i=1..n} u_i w_{n-i}.
  const int K = d.precision;
  std::vector<std::uint64_t> u = digits(x), w(K, 0);
  const std::uint64_t inv0 = d.finv[u[0]];
  w[0] = inv0;
  for (int n = 1; n < K; ++n) {
    std::uint64_t acc = 0;
    for (int i = 1; i <= n; ++i) acc = d.fadd[acc * d.q + d.fmul[u[i] * d.q + w[n - i]]];
    w[n] = d.fneg[d.fmul[inv0 * d.q + acc]];
  }
  return from_digits(w);
}

std::vector<Scalar> RingSpec::enumerate_residues(int precision) const {
  if (precision < 0 || precision > data_->precision)
    throw InvalidInput("enumerate_residues: precision " + std::to_string(precision) +
                       " exceeds ring precision " + std::to_string(data_->precision));
  std::vector<Scalar> out;
  out.reserve(data_->qpow[precision]);
  for (std::uint64_t c = 0; c < data_->qpow[precision]; ++c) out.push_back({c});
  return out;
}

std::vector<std::uint64_t> RingSpec::digits(Scalar x) const {
  std::vector<std::uint64_t> out(data_->precision);
  std::uint64_t c = x.code;
  for (auto& dgt : out) {
    dgt = c % data_->q;
    c /= data_->q;
  }
  return out;
}

Scalar RingSpec::from_digits(const std::vector<std::uint64_t>& digits) const {
  std::uint64_t code = 0;
  for (std::size_t i = std::min<std::size_t>(digits.size(), data_->precision); i-- > 0;)
    code = code * data_->q + digits[i] % data_->q;
  return {code};
}

std::string RingSpec::format(Scalar x) const {
  if (data_->backend == Backend::IntegerLocal) return std::to_string(x.code);
  if (x.code == 0) return "0";
  std::string out;
  auto dg = digits(x);
  for (std::size_t i = 0; i < dg.size(); ++i) {
    if (dg[i] == 0) continue;
    if (!out.empty()) out += "+";
    std::string coeff = std::to_string(dg[i]);
    if (i == 0) out += coeff;
    else {
      if (dg[i] != 1) out += coeff;
      out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  return out;
}

std::string to_string(const RingSpec& ring) {
  std::string base = ring.backend() == Backend::IntegerLocal
                         ? "Z/" + std::to_string(ring.characteristic())
                         : "F_" + std::to_string(ring.residue_field_size()) + "[t]/t";
  return base + "^" + std::to_string(ring.precision());
}

Residue scalar_arith(ArithOp op, const Residue& x, const Residue& y) {
  if (!(x.ring == y.ring)) throw InvalidInput("scalar_arith: mismatched rings");
  if (!x.ring.contains(x.value) || !y.ring.contains(y.value))
    throw InvalidInput("scalar_arith: scalar not reduced for its ring");
  switch (op) {
    case ArithOp::Add: return {x.ring, x.ring.add(x.value, y.value)};
    case ArithOp::Mul: return {x.ring, x.ring.mul(x.value, y.value)};
    case ArithOp::Neg: return {x.ring, x.ring.neg(x.value)};
  }
  throw std::logic_error("unknown op");
}

}  // namespace ulm
