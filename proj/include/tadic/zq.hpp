#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "tadic/padic.hpp"

namespace tadic {

/// Monic polynomial over F_p, coefficients low-to-high, leading 1 included.
using ResiduePolynomial = std::vector<std::uint64_t>;

/// True iff the monic polynomial has no monic factor of degree <= deg/2 over F_p.
bool is_irreducible_mod_p(const ResiduePolynomial& g, std::uint32_t p);

/// First monic irreducible of the given degree in the order x^n + c(x),
/// c ranging over integer codes sum c_i p^i = 0, 1, 2, ...
ResiduePolynomial smallest_irreducible(std::uint32_t p, std::uint32_t degree);

/// The unramified extension Z_p[x]/(g) of degree n, known modulo p^N, with g
/// a lift of an irreducible polynomial over F_p. Residues of elements at
/// precision e are length-n coefficient vectors in [0, p^e).
///
/// Holds the Frobenius image of the generator (Hensel lift of the root of g
/// congruent to x^p) and the trace functional Tr(x^i).
class UnramifiedRing {
 public:
  static std::shared_ptr<const UnramifiedRing> create(std::uint32_t p, std::uint32_t degree,
                                                      std::uint32_t precision);
  static std::shared_ptr<const UnramifiedRing> with_modulus(std::uint32_t p,
                                                            std::uint32_t precision,
                                                            ResiduePolynomial modulus);

  std::uint32_t prime() const { return p_; }
  std::uint32_t degree() const { return n_; }
  std::uint32_t precision() const { return prec_; }
  const ResiduePolynomial& defining_polynomial() const { return g_; }

  /// Size p^n of the residue field.
  std::uint64_t residue_field_size() const;

  // Raw kernels on coefficient vectors of length degree(), modulo m = p^e (e <= precision()).
  void mul(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
           std::span<std::uint64_t> out, std::uint64_t m) const;
  std::vector<std::uint64_t> pow(std::span<const std::uint64_t> a, std::uint64_t e,
                                 std::uint64_t m) const;
  std::vector<std::uint64_t> frobenius(std::span<const std::uint64_t> a, std::uint64_t m) const;
  std::vector<std::uint64_t> inverse(std::span<const std::uint64_t> a, std::uint32_t e) const;

  /// Tr(x^i) for i < n, modulo p^precision().
  const std::vector<std::uint64_t>& trace_functional() const { return trace_of_basis_; }

  /// Trace via the functional; equals the Frobenius-orbit sum (tested).
  std::uint64_t trace_linear(std::span<const std::uint64_t> a, std::uint64_t m) const;

 private:
  UnramifiedRing(std::uint32_t p, std::uint32_t precision, ResiduePolynomial g);
  void reduce(std::span<std::uint64_t> wide, std::uint64_t m) const;

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t prec_;
  std::uint64_t mod_;
  ResiduePolynomial g_;
  std::vector<std::vector<std::uint64_t>> frob_columns_;  // sigma(x)^i
  std::vector<std::uint64_t> trace_of_basis_;
};

using RingPtr = std::shared_ptr<const UnramifiedRing>;

/// Element of an unramified extension ring, at a per-element precision.
class ZqElement {
 public:
  ZqElement(RingPtr ring, std::vector<PadicInt> coeffs);
  /// Raw residues, reduced modulo p^precision.
  ZqElement(RingPtr ring, std::uint32_t precision, std::vector<std::uint64_t> residues);

  static ZqElement zero(RingPtr ring, std::uint32_t precision);
  static ZqElement one(RingPtr ring, std::uint32_t precision);
  static ZqElement scalar(RingPtr ring, const PadicInt& c);
  /// Element with base-p digits of `code` as coordinates (the F_q encoding).
  static ZqElement from_code(RingPtr ring, std::uint64_t code, std::uint32_t precision);

  const RingPtr& ring() const { return ring_; }
  std::uint32_t precision() const { return prec_; }
  std::uint64_t modulus() const { return mod_; }
  std::span<const std::uint64_t> residues() const { return c_; }
  std::vector<PadicInt> coeffs() const;

  /// Integer code of the reduction mod p (inverse of from_code at precision 1).
  std::uint64_t residue_code() const;
  bool is_zero() const;
  bool is_unit() const;

  ZqElement with_precision(std::uint32_t precision) const;
  /// Reinterpret the residues at a higher precision (any lift of the same class mod p^old).
  ZqElement lifted_to(std::uint32_t precision) const;

  ZqElement operator-() const;
  ZqElement& operator+=(const ZqElement& o);
  ZqElement& operator-=(const ZqElement& o);
  ZqElement& operator*=(const ZqElement& o);
  friend ZqElement operator+(ZqElement a, const ZqElement& b) { return a += b; }
  friend ZqElement operator-(ZqElement a, const ZqElement& b) { return a -= b; }
  friend ZqElement operator*(ZqElement a, const ZqElement& b) { return a *= b; }

  ZqElement pow(std::uint64_t e) const;
  ZqElement inverse() const;

  friend bool operator==(const ZqElement& a, const ZqElement& b);

 private:
  void align(const ZqElement& o);

  RingPtr ring_;
  std::uint32_t prec_;
  std::uint64_t mod_;
  std::vector<std::uint64_t> c_;
};

ZqElement frobenius(const ZqElement& z);

/// Sum of the n Frobenius conjugates. Throws InternalError if the sum has a
/// nonzero non-constant coordinate.
PadicInt trace(const ZqElement& z);

/// Teichmüller lift of z mod p: fixed point of x -> x^(p^n), at the target precision.
ZqElement teichmuller(const ZqElement& z, std::uint32_t target_precision);

/// Generator of the multiplicative group of the residue field, as a precision-1 element.
ZqElement multiplicative_generator(const RingPtr& ring);

/// A root in F_{p^n} of the irreducible `small` (deg(small) | n), chosen as the
/// first root along generator^(j (p^n-1)/(p^m-1)), j = 0, 1, ...
ZqElement subfield_root(const RingPtr& ring, const ResiduePolynomial& small);

/// Distinct prime factors by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace tadic
