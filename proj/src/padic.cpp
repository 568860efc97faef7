#include "tadic/padic.hpp"

#include <ostream>

namespace tadic {

namespace modarith {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base, m);
    base = mul(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p, std::uint64_t m) {
  if (a % p == 0) throw DomainError("inverse of a non-unit modulo p^N");
  // Extended Euclid over signed 128-bit to stay exact for m < 2^62.
  __int128 r0 = static_cast<__int128>(m), r1 = static_cast<__int128>(a % m);
  __int128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  __int128 res = s0 % static_cast<__int128>(m);
  if (res < 0) res += m;
  return static_cast<std::uint64_t>(res);
}

std::uint64_t prime_power(std::uint32_t p, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (r > kMaxModulus / p) {
      throw PrecisionError("p^" + std::to_string(e) + " exceeds the 2^62 residue limit for p = " +
                           std::to_string(p));
    }
    r *= p;
  }
  return r;
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  if (v >= 0) return static_cast<std::uint64_t>(v) % m;
  std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
  std::uint64_t r = mag % m;
  return r == 0 ? 0 : m - r;
}

int valuation(std::uint64_t n, std::uint32_t p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int factorial_valuation(std::uint64_t n, std::uint32_t p) {
  int v = 0;
  for (std::uint64_t q = p; q <= n; q *= p) {
    v += static_cast<int>(n / q);
    if (q > n / p) break;
  }
  return v;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

}  // namespace modarith

std::string to_string(const Valuation& v) {
  return v.certified ? std::to_string(v.value) : ">=" + std::to_string(v.value);
}

PadicInt::PadicInt(std::uint32_t p, std::uint32_t precision, std::int64_t value)
    : p_(p), n_(precision), mod_(0), value_(0) {
  if (!modarith::is_prime(p)) throw DomainError("PadicInt: " + std::to_string(p) + " is not prime");
  if (precision == 0) throw DomainError("PadicInt: precision must be positive");
  mod_ = modarith::prime_power(p, precision);
  value_ = modarith::reduce_signed(value, mod_);
}

PadicInt PadicInt::from_residue(std::uint32_t p, std::uint32_t precision, std::uint64_t residue) {
  PadicInt x(p, precision, 0);
  x.value_ = residue % x.mod_;
  return x;
}

std::int64_t PadicInt::signed_residue() const {
  if (value_ > mod_ / 2) return -static_cast<std::int64_t>(mod_ - value_);
  return static_cast<std::int64_t>(value_);
}

Valuation PadicInt::valuation() const {
  if (value_ == 0) return {static_cast<int>(n_), false};
  return {modarith::valuation(value_, p_), true};
}

PadicInt PadicInt::with_precision(std::uint32_t precision) const {
  if (precision > n_) {
    throw PrecisionError("cannot raise precision from " + std::to_string(n_) + " to " +
                         std::to_string(precision));
  }
  PadicInt r = *this;
  r.lower_to(precision);
  return r;
}

void PadicInt::lower_to(std::uint32_t n) {
  if (n >= n_) return;
  if (n == 0) throw PrecisionError("precision dropped to zero");
  n_ = n;
  mod_ = modarith::prime_power(p_, n);
  value_ %= mod_;
}

void PadicInt::require_same_prime(const PadicInt& o) const {
  if (p_ != o.p_) {
    throw DomainError("mixing p-adic integers over different primes (" + std::to_string(p_) +
                      " vs " + std::to_string(o.p_) + ")");
  }
}

PadicInt PadicInt::operator-() const {
  return PadicInt(p_, n_, mod_, value_ == 0 ? 0 : mod_ - value_);
}

PadicInt& PadicInt::operator+=(const PadicInt& o) {
  require_same_prime(o);
  lower_to(o.n_);
  value_ = modarith::add(value_, o.value_ % mod_, mod_);
  return *this;
}

PadicInt& PadicInt::operator-=(const PadicInt& o) {
  require_same_prime(o);
  lower_to(o.n_);
  value_ = modarith::sub(value_, o.value_ % mod_, mod_);
  return *this;
}

PadicInt& PadicInt::operator*=(const PadicInt& o) {
  require_same_prime(o);
  lower_to(o.n_);
  value_ = modarith::mul(value_, o.value_ % mod_, mod_);
  return *this;
}

PadicInt PadicInt::pow(std::uint64_t e) const {
  return PadicInt(p_, n_, mod_, modarith::pow(value_, e, mod_));
}

PadicInt PadicInt::inverse() const {
  return PadicInt(p_, n_, mod_, modarith::inverse(value_, p_, mod_));
}

PadicInt PadicInt::divide_exact(std::int64_t n) const {
  if (n == 0) throw DomainError("division by zero");
  std::uint64_t mag = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  int v = modarith::valuation(mag, p_);
  std::uint64_t unit = mag;
  for (int i = 0; i < v; ++i) unit /= p_;
  if (static_cast<std::uint32_t>(v) >= n_) {
    throw PrecisionError("division by p^" + std::to_string(v) + " leaves no digits at precision " +
                         std::to_string(n_));
  }
  Valuation val = valuation();
  if (val.certified && val.value < v) {
    throw DomainError("dividend has valuation " + std::to_string(val.value) +
                         ", cannot divide by p^" + std::to_string(v));
  }
  std::uint32_t out_n = n_ - static_cast<std::uint32_t>(v);
  std::uint64_t out_mod = modarith::prime_power(p_, out_n);
  std::uint64_t shifted = value_;
  for (int i = 0; i < v; ++i) shifted /= p_;
  shifted %= out_mod;
  std::uint64_t r = modarith::mul(shifted, modarith::inverse(unit % out_mod, p_, out_mod), out_mod);
  if (n < 0 && r != 0) r = out_mod - r;
  return PadicInt(p_, out_n, out_mod, r);
}

bool operator==(const PadicInt& a, const PadicInt& b) {
  if (a.p_ != b.p_) return false;
  std::uint64_t m = a.n_ < b.n_ ? a.mod_ : b.mod_;
  return a.value_ % m == b.value_ % m;
}

std::ostream& operator<<(std::ostream& os, const PadicInt& x) {
  return os << x.residue() << " (mod " << x.prime() << "^" << x.precision() << ")";
}

PadicInt teichmuller(const PadicInt& a) {
  PadicInt x = a;
  for (std::uint32_t i = 0; i <= a.precision(); ++i) {
    PadicInt next = x.pow(a.prime());
    if (next == x) return x;
    x = next;
  }
  throw InternalError("Teichmüller iteration did not converge");
}

}  // namespace tadic
