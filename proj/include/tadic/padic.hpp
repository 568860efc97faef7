#pragma once

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <string>

#include "tadic/errors.hpp"

namespace tadic {

namespace modarith {

/// Largest modulus accepted anywhere; keeps a + b below 2^64.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a unit modulo p^N (a must be prime to p).
std::uint64_t inverse(std::uint64_t a, std::uint64_t p, std::uint64_t m);

/// p^e, throwing PrecisionError when it exceeds kMaxModulus.
std::uint64_t prime_power(std::uint32_t p, std::uint32_t e);

/// Reduce a signed integer into [0, m).
std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m);

/// v_p(n) for n > 0.
int valuation(std::uint64_t n, std::uint32_t p);

/// v_p(n!) by Legendre's formula.
int factorial_valuation(std::uint64_t n, std::uint32_t p);

bool is_prime(std::uint64_t n);

}  // namespace modarith

/// Valuation reported against a finite precision window. When `certified`
/// is false the true valuation is only known to be >= `value`.
struct Valuation {
  int value = 0;
  bool certified = true;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

std::string to_string(const Valuation& v);

/// An element of Z_p known modulo p^N.
class PadicInt {
 public:
  PadicInt(std::uint32_t p, std::uint32_t precision, std::int64_t value = 0);

  /// Wrap an already reduced residue (0 <= residue < p^precision).
  static PadicInt from_residue(std::uint32_t p, std::uint32_t precision, std::uint64_t residue);

  std::uint32_t prime() const { return p_; }
  std::uint32_t precision() const { return n_; }
  std::uint64_t modulus() const { return mod_; }
  std::uint64_t residue() const { return value_; }

  /// Balanced representative in (-p^N/2, p^N/2].
  std::int64_t signed_residue() const;

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const { return value_ % p_ != 0; }
  Valuation valuation() const;

  /// Drop to a lower precision; raising precision is a PrecisionError.
  PadicInt with_precision(std::uint32_t precision) const;

  PadicInt operator-() const;
  PadicInt& operator+=(const PadicInt& o);
  PadicInt& operator-=(const PadicInt& o);
  PadicInt& operator*=(const PadicInt& o);
  friend PadicInt operator+(PadicInt a, const PadicInt& b) { return a += b; }
  friend PadicInt operator-(PadicInt a, const PadicInt& b) { return a -= b; }
  friend PadicInt operator*(PadicInt a, const PadicInt& b) { return a *= b; }

  PadicInt pow(std::uint64_t e) const;
  PadicInt inverse() const;

  /// Exact division by the integer n = p^v * u; the result is known modulo
  /// p^(N - v). A certified valuation below v is a DomainError (not divisible),
  /// v >= N a PrecisionError.
  PadicInt divide_exact(std::int64_t n) const;

  /// Equality modulo p^min(N, N').
  friend bool operator==(const PadicInt& a, const PadicInt& b);

 private:
  PadicInt(std::uint32_t p, std::uint32_t n, std::uint64_t mod, std::uint64_t v)
      : p_(p), n_(n), mod_(mod), value_(v) {}
  void require_same_prime(const PadicInt& o) const;
  void lower_to(std::uint32_t n);

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint64_t mod_;
  std::uint64_t value_;
};

std::ostream& operator<<(std::ostream& os, const PadicInt& x);

/// Teichmüller lift in Z_p: the fixed point of x -> x^p above a (mod p).
PadicInt teichmuller(const PadicInt& a);

}  // namespace tadic
