#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tadic/padic.hpp"

namespace tadic {

/// Element of Z_p[pi1] with pi1 = zeta_p - 1, stored in the basis
/// 1, pi1, ..., pi1^(p-2) and known modulo p^N. Products are reduced by
/// Phi_p(1 + pi1) = 0, i.e. pi1^(p-1) = -sum_{j=1}^{p-1} C(p, j) pi1^(j-1).
class CyclotomicElement {
 public:
  CyclotomicElement(std::uint32_t p, std::uint32_t precision, std::vector<std::uint64_t> coeffs);
  explicit CyclotomicElement(std::vector<PadicInt> coeffs);

  static CyclotomicElement zero(std::uint32_t p, std::uint32_t precision);
  static CyclotomicElement one(std::uint32_t p, std::uint32_t precision);
  static CyclotomicElement constant(const PadicInt& c);
  static CyclotomicElement uniformizer(std::uint32_t p, std::uint32_t precision);

  /// Evaluate sum poly[i] pi1^i for an arbitrary-length polynomial.
  static CyclotomicElement from_polynomial(std::uint32_t p, std::uint32_t precision,
                                           std::span<const std::uint64_t> poly);

  std::uint32_t prime() const { return p_; }
  std::uint32_t precision() const { return n_; }
  std::span<const std::uint64_t> residues() const { return c_; }
  std::vector<PadicInt> coeffs() const;
  bool is_zero() const;

  /// Natural cap (p-1) N of the pi1-adic window.
  int valuation_cap() const { return static_cast<int>((p_ - 1) * n_); }

  /// ord_{pi1} via min_i ((p-1) v_p(c_i) + i); these candidates are pairwise
  /// distinct, so the minimum is exact whenever it lies below `cap`
  /// (default and upper limit: valuation_cap()).
  Valuation valuation(int cap = -1) const;

  CyclotomicElement operator-() const;
  CyclotomicElement& operator+=(const CyclotomicElement& o);
  CyclotomicElement& operator-=(const CyclotomicElement& o);
  CyclotomicElement& operator*=(const CyclotomicElement& o);
  friend CyclotomicElement operator+(CyclotomicElement a, const CyclotomicElement& b) { return a += b; }
  friend CyclotomicElement operator-(CyclotomicElement a, const CyclotomicElement& b) { return a -= b; }
  friend CyclotomicElement operator*(CyclotomicElement a, const CyclotomicElement& b) { return a *= b; }
  CyclotomicElement pow(std::uint64_t e) const;

  friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b);

 private:
  void align(const CyclotomicElement& o);

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint64_t mod_;
  std::vector<std::uint64_t> c_;
};

/// Reduce a polynomial in pi1 (any length) to the basis of length p - 1, modulo m = p^N.
std::vector<std::uint64_t> reduce_cyclotomic(std::uint32_t p, std::vector<std::uint64_t> poly,
                                             std::uint64_t m);

}  // namespace tadic
