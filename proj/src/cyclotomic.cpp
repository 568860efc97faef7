#include "tadic/cyclotomic.hpp"

#include <algorithm>
#include <string>

namespace tadic {

namespace {

// c_j = C(p, j + 1) mod m for j < p - 1: pi1^(p-1) = -sum_j c_j pi1^j.
std::vector<std::uint64_t> relation(std::uint32_t p, std::uint64_t m) {
  std::vector<std::uint64_t> c(p - 1);
  std::uint64_t binom = 1;  // C(p, 0)
  for (std::uint32_t j = 1; j < p; ++j) {
    // C(p, j) = C(p, j-1) (p - j + 1) / j, and j < p is a unit.
    binom = modarith::mul(binom, (p - j + 1) % m, m);
    binom = modarith::mul(binom, modarith::inverse(j % m, p, m), m);
    c[j - 1] = binom;
  }
  return c;
}

}  // namespace

std::vector<std::uint64_t> reduce_cyclotomic(std::uint32_t p, std::vector<std::uint64_t> poly,
                                             std::uint64_t m) {
  const std::size_t deg = p - 1;
  if (poly.size() > deg) {
    const auto rel = relation(p, m);
    for (std::size_t i = poly.size(); i-- > deg;) {
      std::uint64_t c = poly[i] % m;
      if (c == 0) continue;
      const std::size_t base = i - deg;
      for (std::size_t j = 0; j < deg; ++j) {
        poly[base + j] = modarith::sub(poly[base + j] % m, modarith::mul(c, rel[j], m), m);
      }
      poly[i] = 0;
    }
  }
  poly.resize(deg, 0);
  for (auto& v : poly) v %= m;
  return poly;
}

CyclotomicElement::CyclotomicElement(std::uint32_t p, std::uint32_t precision,
                                     std::vector<std::uint64_t> coeffs)
    : p_(p), n_(precision), mod_(modarith::prime_power(p, precision)), c_(std::move(coeffs)) {
  if (!modarith::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (c_.size() != p - 1) c_ = reduce_cyclotomic(p, std::move(c_), mod_);
  for (auto& v : c_) v %= mod_;
}

CyclotomicElement::CyclotomicElement(std::vector<PadicInt> coeffs) : p_(0), n_(0), mod_(0) {
  if (coeffs.empty()) throw DomainError("CyclotomicElement needs coordinates");
  p_ = coeffs.front().prime();
  n_ = coeffs.front().precision();
  for (const auto& c : coeffs) {
    if (c.prime() != p_) throw DomainError("mixed primes in CyclotomicElement");
    n_ = std::min(n_, c.precision());
  }
  mod_ = modarith::prime_power(p_, n_);
  for (const auto& c : coeffs) c_.push_back(c.residue() % mod_);
  c_ = reduce_cyclotomic(p_, std::move(c_), mod_);
}

CyclotomicElement CyclotomicElement::zero(std::uint32_t p, std::uint32_t precision) {
  return CyclotomicElement(p, precision, std::vector<std::uint64_t>(p - 1, 0));
}

CyclotomicElement CyclotomicElement::one(std::uint32_t p, std::uint32_t precision) {
  std::vector<std::uint64_t> c(p - 1, 0);
  c[0] = 1;
  return CyclotomicElement(p, precision, std::move(c));
}

CyclotomicElement CyclotomicElement::constant(const PadicInt& x) {
  std::vector<std::uint64_t> c(x.prime() - 1, 0);
  c[0] = x.residue();
  return CyclotomicElement(x.prime(), x.precision(), std::move(c));
}

CyclotomicElement CyclotomicElement::uniformizer(std::uint32_t p, std::uint32_t precision) {
  std::vector<std::uint64_t> c{0, 1};
  return CyclotomicElement(p, precision, std::move(c));
}

CyclotomicElement CyclotomicElement::from_polynomial(std::uint32_t p, std::uint32_t precision,
                                                     std::span<const std::uint64_t> poly) {
  std::vector<std::uint64_t> c(poly.begin(), poly.end());
  return CyclotomicElement(p, precision, std::move(c));
}

std::vector<PadicInt> CyclotomicElement::coeffs() const {
  std::vector<PadicInt> out;
  for (auto v : c_) out.push_back(PadicInt::from_residue(p_, n_, v));
  return out;
}

bool CyclotomicElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint64_t v) { return v == 0; });
}

Valuation CyclotomicElement::valuation(int cap) const {
  const int natural = valuation_cap();
  if (cap < 0 || cap > natural) cap = natural;
  int best = cap;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    int v = static_cast<int>(p_ - 1) * modarith::valuation(c_[i], p_) + static_cast<int>(i);
    best = std::min(best, v);
  }
  if (best < cap) return {best, true};
  return {cap, false};
}

void CyclotomicElement::align(const CyclotomicElement& o) {
  if (p_ != o.p_) throw DomainError("CyclotomicElement operands over different primes");
  if (o.n_ < n_) {
    n_ = o.n_;
    mod_ = o.mod_;
    for (auto& v : c_) v %= mod_;
  }
}

CyclotomicElement CyclotomicElement::operator-() const {
  CyclotomicElement r = *this;
  for (auto& v : r.c_) v = v == 0 ? 0 : mod_ - v;
  return r;
}

CyclotomicElement& CyclotomicElement::operator+=(const CyclotomicElement& o) {
  align(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = modarith::add(c_[i], o.c_[i] % mod_, mod_);
  return *this;
}

CyclotomicElement& CyclotomicElement::operator-=(const CyclotomicElement& o) {
  align(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = modarith::sub(c_[i], o.c_[i] % mod_, mod_);
  return *this;
}

CyclotomicElement& CyclotomicElement::operator*=(const CyclotomicElement& o) {
  align(o);
  std::vector<std::uint64_t> w(2 * c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      w[i + j] = modarith::add(w[i + j], modarith::mul(c_[i], o.c_[j] % mod_, mod_), mod_);
    }
  }
  c_ = reduce_cyclotomic(p_, std::move(w), mod_);
  return *this;
}

CyclotomicElement CyclotomicElement::pow(std::uint64_t e) const {
  CyclotomicElement result = one(p_, n_), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
  if (a.p_ != b.p_) return false;
  std::uint64_t m = std::min(a.mod_, b.mod_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] % m != b.c_[i] % m) return false;
  }
  return true;
}

}  // namespace tadic
