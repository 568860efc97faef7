#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tadic/padic.hpp"

namespace tadic {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Formal variable a series is written in. Operations refuse to mix tags.
enum class Variable { T, Pi, t, s };

std::string_view variable_name(Variable v);

/// Truncated power series sum c_i X^i, known modulo (p^N, X^M).
class TSeries {
 public:
  TSeries(Variable var, std::uint32_t p, std::uint32_t precision, std::vector<std::uint64_t> residues);
  /// Precision is the minimum over the coefficients. `coeffs` must be nonempty.
  TSeries(Variable var, const std::vector<PadicInt>& coeffs);

  static TSeries zero(Variable var, std::uint32_t p, std::uint32_t precision, std::size_t length);
  static TSeries one(Variable var, std::uint32_t p, std::uint32_t precision, std::size_t length);
  static TSeries monomial(Variable var, std::uint32_t p, std::uint32_t precision, std::size_t length,
                          std::size_t degree, std::int64_t coeff = 1);

  Variable var() const { return var_; }
  std::uint32_t prime() const { return p_; }
  std::uint32_t precision() const { return n_; }
  std::uint64_t modulus() const { return mod_; }
  std::size_t length() const { return c_.size(); }
  std::span<const std::uint64_t> residues() const { return c_; }
  PadicInt operator[](std::size_t i) const;

  TSeries truncated(std::size_t length) const;
  TSeries with_precision(std::uint32_t precision) const;
  TSeries retagged(Variable var) const;

  bool is_zero() const;
  /// Least i with c_i != 0 mod p^N, certified; {length, false} when all vanish.
  Valuation order() const;

  TSeries operator-() const;
  TSeries& operator+=(const TSeries& o);
  TSeries& operator-=(const TSeries& o);
  TSeries& operator*=(const TSeries& o);
  friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
  friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
  friend TSeries operator*(TSeries a, const TSeries& b) { return a *= b; }

  TSeries scaled(const PadicInt& c) const;
  /// Divide every coefficient by the integer n; precision drops by v_p(n).
  TSeries divide_exact(std::int64_t n) const;
  /// Inverse of a series with unit constant term.
  TSeries inverse() const;

  /// Equality modulo the common window (min length, min precision).
  friend bool operator==(const TSeries& a, const TSeries& b);

 private:
  void align(const TSeries& o);

  Variable var_;
  std::uint32_t p_;
  std::uint32_t n_;
  std::uint64_t mod_;
  std::vector<std::uint64_t> c_;
};

/// Shared-truncation ring operations, named for the plumbing contract.
inline TSeries series_mul(const TSeries& a, const TSeries& b) { return a * b; }
inline TSeries series_add(const TSeries& a, const TSeries& b) { return a + b; }
inline TSeries truncate(const TSeries& a, std::size_t length) { return a.truncated(length); }

/// Guard digits for binomial/exp/log at truncation M: ceil((M-1)/(p-1)) + 1,
/// an upper bound for v_p((M-1)!).
std::uint32_t binomial_guard(std::uint32_t p, std::size_t length);

/// Computes C(z, k) mod p^N for k < M from z known mod p^N'. Precomputes
/// v_p(k!) and the inverse unit parts of k!, so it can be reused across many z.
class BinomialExpander {
 public:
  /// Throws PrecisionError unless working >= target + v_p((M-1)!).
  BinomialExpander(std::uint32_t p, std::uint32_t working, std::uint32_t target, std::size_t length);

  std::uint32_t prime() const { return p_; }
  std::uint32_t working_precision() const { return working_; }
  std::uint32_t target_precision() const { return target_; }
  std::size_t length() const { return length_; }
  std::uint64_t working_modulus() const { return wmod_; }
  std::uint64_t target_modulus() const { return tmod_; }

  /// acc[k] += count * C(z, k) mod p^target, for z a residue mod p^working.
  void accumulate(std::uint64_t z, std::uint64_t count, std::span<std::uint64_t> acc) const;

 private:
  std::uint32_t p_, working_, target_;
  std::size_t length_;
  std::uint64_t wmod_, tmod_;
  std::vector<int> fact_val_;
  std::vector<std::uint64_t> fact_unit_inv_;  // mod p^target
  std::vector<std::uint64_t> p_pow_;          // p^v, v <= max valuation
};

/// (1+T)^z = sum_{k<M} C(z, k) T^k, certified modulo p^target.
TSeries binomial_series(const PadicInt& z, std::size_t length, std::uint32_t target);

/// exp(a) for a(0) = 0; throws DomainError otherwise and PrecisionError if
/// fewer than `target` digits survive the divisions.
TSeries exp_series(const TSeries& a, std::uint32_t target);

/// log(f) for f(0) = 1.
TSeries log_series(const TSeries& f, std::uint32_t target);

/// Artin–Hasse coefficients lambda_0..lambda_{M-1} as exact rationals.
std::vector<Rational> artin_hasse_rational(std::uint32_t p, std::size_t length);

/// E(t) = exp(sum_i t^(p^i) / p^i) mod (p^N, t^M), in the given variable (default t).
/// Throws InternalError if some lambda_i fails to be p-integral.
TSeries artin_hasse(std::uint32_t p, std::size_t length, std::uint32_t precision,
                    Variable var = Variable::t);

/// Substitute T = E(pi) - 1 into a T-series; the result is a pi-series mod pi^P.
/// Requires length(f) >= P.
TSeries compose_T_into_pi(const TSeries& f, std::size_t pi_length);

/// Power series in s whose coefficients are TSeries in one common variable.
/// Entry m is the s^m coefficient; entries 0..m_max are known.
class BiSeries {
 public:
  explicit BiSeries(std::vector<TSeries> coeffs);

  static BiSeries one(Variable var, std::uint32_t p, std::uint32_t precision, std::size_t length,
                      std::size_t s_order);

  std::size_t s_order() const { return c_.size(); }
  std::size_t max_degree() const { return c_.size() - 1; }
  const TSeries& operator[](std::size_t m) const { return c_[m]; }
  const std::vector<TSeries>& coeffs() const { return c_; }

  BiSeries operator*(const BiSeries& o) const;
  /// Inverse in s; the s^0 coefficient must be invertible.
  BiSeries inverse() const;
  /// F(c s): multiply the s^m coefficient by c^m.
  BiSeries scale_s(const PadicInt& c) const;
  /// Apply f coefficientwise (e.g. the T -> pi substitution).
  template <class F>
  BiSeries map(F&& f) const {
    std::vector<TSeries> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(f(c));
    return BiSeries(std::move(out));
  }

  friend bool operator==(const BiSeries& a, const BiSeries& b);

 private:
  std::vector<TSeries> c_;
};

/// exp(sum_{l>=1} (w_l / l) s^l) given w_1..w_{m_max} (w[0] is ignored), via
/// m F_m = sum_{l=1}^m w_l F_{m-l}. Throws InternalError if some m F_m is not
/// divisible by m (the result would not be integral).
BiSeries exp_from_weighted_terms(const std::vector<TSeries>& w, std::size_t m_max);

}  // namespace tadic
