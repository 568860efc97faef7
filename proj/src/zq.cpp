#include "tadic/zq.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace tadic {

namespace {

using modarith::add;
using modarith::mul;
using modarith::sub;

// Remainder of a modulo the monic b over F_p; both low-to-high.
std::vector<std::uint64_t> poly_rem_mod_p(std::vector<std::uint64_t> a, const ResiduePolynomial& b,
                                          std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint64_t lead = a.back() % p;
    std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t j = 0; j <= db; ++j) {
        a[shift + j] = sub(a[shift + j] % p, mul(lead, b[j], p), p);
      }
    }
    a.pop_back();
  }
  return a;
}

std::uint64_t checked_prime_power_count(std::uint32_t p, std::uint32_t n) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) {
      throw ResourceError("residue field of size " + std::to_string(p) + "^" + std::to_string(n) +
                          " is too large to enumerate");
    }
    r *= p;
  }
  return r;
}

}  // namespace

bool is_irreducible_mod_p(const ResiduePolynomial& g, std::uint32_t p) {
  if (g.size() < 2 || g.back() % p != 1) throw DomainError("expected a monic polynomial of degree >= 1");
  const std::uint32_t n = static_cast<std::uint32_t>(g.size() - 1);
  for (std::uint32_t f = 1; f <= n / 2; ++f) {
    const std::uint64_t count = checked_prime_power_count(p, f);
    ResiduePolynomial h(f + 1, 0);
    h[f] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < f; ++i) {
        h[i] = c % p;
        c /= p;
      }
      auto r = poly_rem_mod_p(g, h, p);
      if (std::all_of(r.begin(), r.end(), [p](std::uint64_t v) { return v % p == 0; })) return false;
    }
  }
  return true;
}

ResiduePolynomial smallest_irreducible(std::uint32_t p, std::uint32_t degree) {
  if (degree == 0) throw DomainError("extension degree must be >= 1");
  const std::uint64_t count = checked_prime_power_count(p, degree);
  ResiduePolynomial g(degree + 1, 0);
  g[degree] = 1;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < degree; ++i) {
      g[i] = c % p;
      c /= p;
    }
    if (is_irreducible_mod_p(g, p)) return g;
  }
  throw InternalError("no irreducible polynomial found");  // impossible over a finite field
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// UnramifiedRing

RingPtr UnramifiedRing::create(std::uint32_t p, std::uint32_t degree, std::uint32_t precision) {
  if (!modarith::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  return with_modulus(p, precision, smallest_irreducible(p, degree));
}

RingPtr UnramifiedRing::with_modulus(std::uint32_t p, std::uint32_t precision,
                                     ResiduePolynomial modulus) {
  if (!modarith::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  for (auto& c : modulus) c %= p;
  if (!is_irreducible_mod_p(modulus, p)) {
    throw DomainError("modulus is not irreducible modulo " + std::to_string(p));
  }
  return RingPtr(new UnramifiedRing(p, precision, std::move(modulus)));
}

UnramifiedRing::UnramifiedRing(std::uint32_t p, std::uint32_t precision, ResiduePolynomial g)
    : p_(p),
      n_(static_cast<std::uint32_t>(g.size() - 1)),
      prec_(precision),
      mod_(modarith::prime_power(p, precision)),
      g_(std::move(g)) {
  if (precision == 0) throw DomainError("ring precision must be positive");
  checked_prime_power_count(p, n_);

  // Generator class x; in degree 1 that is the root -g_0.
  std::vector<std::uint64_t> x(n_, 0);
  if (n_ == 1) {
    x[0] = sub(0, g_[0], mod_);
  } else {
    x[1] = 1;
  }

  // Hensel-lift the root of g congruent to x^p.
  auto eval = [&](const std::vector<std::uint64_t>& y, bool derivative) {
    std::vector<std::uint64_t> acc(n_, 0), tmp(n_);
    const std::size_t top = n_ + 1;
    for (std::size_t j = top; j-- > (derivative ? 1u : 0u);) {
      mul(acc, y, tmp, mod_);
      std::uint64_t c = derivative ? modarith::mul(g_[j] % mod_, j % mod_, mod_) : g_[j];
      tmp[0] = add(tmp[0], c % mod_, mod_);
      acc = tmp;
    }
    return acc;
  };
  std::vector<std::uint64_t> y = pow(x, p_, mod_);
  bool converged = false;
  for (int it = 0; it < 80; ++it) {
    auto gy = eval(y, false);
    if (std::all_of(gy.begin(), gy.end(), [](std::uint64_t v) { return v == 0; })) {
      converged = true;
      break;
    }
    auto dinv = inverse(eval(y, true), prec_);
    std::vector<std::uint64_t> step(n_);
    mul(gy, dinv, step, mod_);
    for (std::uint32_t i = 0; i < n_; ++i) y[i] = sub(y[i], step[i], mod_);
  }
  if (!converged) throw InternalError("Hensel lift of the Frobenius root did not converge");

  frob_columns_.assign(n_, std::vector<std::uint64_t>(n_, 0));
  frob_columns_[0][0] = 1 % mod_;
  for (std::uint32_t i = 1; i < n_; ++i) mul(frob_columns_[i - 1], y, frob_columns_[i], mod_);

  trace_of_basis_.assign(n_, 0);
  std::vector<std::uint64_t> basis(n_, 0);
  basis[0] = 1 % mod_;
  for (std::uint32_t i = 0; i < n_; ++i) {
    std::vector<std::uint64_t> sum(n_, 0), cur = basis;
    for (std::uint32_t j = 0; j < n_; ++j) {
      for (std::uint32_t t = 0; t < n_; ++t) sum[t] = add(sum[t], cur[t], mod_);
      cur = frobenius(cur, mod_);
    }
    for (std::uint32_t t = 1; t < n_; ++t) {
      if (sum[t] != 0) throw InternalError("trace of a basis element left the base ring");
    }
    trace_of_basis_[i] = sum[0];
    std::vector<std::uint64_t> next(n_);
    mul(basis, x, next, mod_);
    basis = next;
  }
}

std::uint64_t UnramifiedRing::residue_field_size() const { return checked_prime_power_count(p_, n_); }

void UnramifiedRing::reduce(std::span<std::uint64_t> w, std::uint64_t m) const {
  for (std::size_t i = w.size(); i-- > n_;) {
    std::uint64_t c = w[i];
    if (c == 0) continue;
    const std::size_t base = i - n_;
    for (std::uint32_t j = 0; j < n_; ++j) {
      if (g_[j] != 0) w[base + j] = sub(w[base + j], modarith::mul(c, g_[j], m), m);
    }
    w[i] = 0;
  }
}

void UnramifiedRing::mul(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                         std::span<std::uint64_t> out, std::uint64_t m) const {
  if (n_ == 1) {
    out[0] = modarith::mul(a[0], b[0], m);
    return;
  }
  const std::size_t wide = 2 * n_ - 1;
  std::array<std::uint64_t, 64> stack{};
  std::vector<std::uint64_t> heap;
  std::span<std::uint64_t> w;
  if (wide <= stack.size()) {
    w = std::span<std::uint64_t>(stack.data(), wide);
  } else {
    heap.assign(wide, 0);
    w = heap;
  }
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::uint32_t j = 0; j < n_; ++j) {
      w[i + j] = add(w[i + j], modarith::mul(a[i], b[j], m), m);
    }
  }
  reduce(w, m);
  std::copy(w.begin(), w.begin() + n_, out.begin());
}

std::vector<std::uint64_t> UnramifiedRing::pow(std::span<const std::uint64_t> a, std::uint64_t e,
                                               std::uint64_t m) const {
  std::vector<std::uint64_t> result(n_, 0), base(a.begin(), a.end()), tmp(n_);
  result[0] = 1 % m;
  for (auto& v : base) v %= m;
  while (e > 0) {
    if (e & 1) {
      mul(result, base, tmp, m);
      result.swap(tmp);
    }
    e >>= 1;
    if (e == 0) break;
    mul(base, base, tmp, m);
    base.swap(tmp);
  }
  return result;
}

std::vector<std::uint64_t> UnramifiedRing::frobenius(std::span<const std::uint64_t> a,
                                                     std::uint64_t m) const {
  std::vector<std::uint64_t> out(n_, 0);
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::uint32_t t = 0; t < n_; ++t) {
      out[t] = add(out[t], modarith::mul(a[i] % m, frob_columns_[i][t] % m, m), m);
    }
  }
  return out;
}

std::vector<std::uint64_t> UnramifiedRing::inverse(std::span<const std::uint64_t> a,
                                                   std::uint32_t e) const {
  const std::uint64_t m = modarith::prime_power(p_, e);
  std::vector<std::uint64_t> a_mod_p(a.begin(), a.end());
  for (auto& v : a_mod_p) v %= p_;
  if (std::all_of(a_mod_p.begin(), a_mod_p.end(), [](std::uint64_t v) { return v == 0; })) {
    throw DomainError("inverse of a non-unit in the unramified extension");
  }
  // a^(p^n - 2) inverts modulo p; Newton u <- u (2 - a u) doubles the precision each step.
  std::vector<std::uint64_t> u = pow(a_mod_p, residue_field_size() - 2, p_);
  std::vector<std::uint64_t> am(a.begin(), a.end()), au(n_), next(n_);
  for (auto& v : am) v %= m;
  for (std::uint32_t known = 1; known < e; known *= 2) {
    mul(am, u, au, m);
    for (std::uint32_t i = 0; i < n_; ++i) au[i] = sub(i == 0 ? 2 % m : 0, au[i], m);
    mul(u, au, next, m);
    u.swap(next);
  }
  return u;
}

std::uint64_t UnramifiedRing::trace_linear(std::span<const std::uint64_t> a, std::uint64_t m) const {
  std::uint64_t s = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (a[i] != 0) s = add(s, modarith::mul(a[i], trace_of_basis_[i] % m, m), m);
  }
  return s;
}

// ---------------------------------------------------------------------------
// ZqElement

ZqElement::ZqElement(RingPtr ring, std::vector<PadicInt> coeffs) : ring_(std::move(ring)) {
  if (coeffs.size() != ring_->degree()) {
    throw DomainError("ZqElement needs " + std::to_string(ring_->degree()) + " coordinates, got " +
                      std::to_string(coeffs.size()));
  }
  prec_ = ring_->precision();
  for (const auto& c : coeffs) {
    if (c.prime() != ring_->prime()) throw DomainError("coordinate over the wrong prime");
    prec_ = std::min(prec_, c.precision());
  }
  mod_ = modarith::prime_power(ring_->prime(), prec_);
  c_.reserve(coeffs.size());
  for (const auto& c : coeffs) c_.push_back(c.residue() % mod_);
}

ZqElement::ZqElement(RingPtr ring, std::uint32_t precision, std::vector<std::uint64_t> residues)
    : ring_(std::move(ring)), prec_(precision), c_(std::move(residues)) {
  if (c_.size() != ring_->degree()) throw DomainError("ZqElement: wrong number of coordinates");
  if (precision == 0 || precision > ring_->precision()) {
    throw PrecisionError("element precision " + std::to_string(precision) +
                         " outside the ring's window (1.." + std::to_string(ring_->precision()) + ")");
  }
  mod_ = modarith::prime_power(ring_->prime(), prec_);
  for (auto& v : c_) v %= mod_;
}

ZqElement ZqElement::zero(RingPtr ring, std::uint32_t precision) {
  std::vector<std::uint64_t> r(ring->degree(), 0);
  return ZqElement(std::move(ring), precision, std::move(r));
}

ZqElement ZqElement::one(RingPtr ring, std::uint32_t precision) {
  std::vector<std::uint64_t> r(ring->degree(), 0);
  r[0] = 1;
  return ZqElement(std::move(ring), precision, std::move(r));
}

ZqElement ZqElement::scalar(RingPtr ring, const PadicInt& c) {
  std::vector<std::uint64_t> r(ring->degree(), 0);
  r[0] = c.residue();
  std::uint32_t prec = std::min(c.precision(), ring->precision());
  return ZqElement(std::move(ring), prec, std::move(r));
}

ZqElement ZqElement::from_code(RingPtr ring, std::uint64_t code, std::uint32_t precision) {
  std::vector<std::uint64_t> r(ring->degree(), 0);
  const std::uint32_t p = ring->prime();
  for (auto& v : r) {
    v = code % p;
    code /= p;
  }
  if (code != 0) throw DomainError("field code out of range");
  return ZqElement(std::move(ring), precision, std::move(r));
}

std::vector<PadicInt> ZqElement::coeffs() const {
  std::vector<PadicInt> out;
  out.reserve(c_.size());
  for (auto v : c_) out.push_back(PadicInt::from_residue(ring_->prime(), prec_, v));
  return out;
}

std::uint64_t ZqElement::residue_code() const {
  std::uint64_t code = 0;
  const std::uint32_t p = ring_->prime();
  for (std::size_t i = c_.size(); i-- > 0;) code = code * p + c_[i] % p;
  return code;
}

bool ZqElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint64_t v) { return v == 0; });
}

bool ZqElement::is_unit() const {
  const std::uint32_t p = ring_->prime();
  return std::any_of(c_.begin(), c_.end(), [p](std::uint64_t v) { return v % p != 0; });
}

ZqElement ZqElement::with_precision(std::uint32_t precision) const {
  if (precision > prec_) throw PrecisionError("cannot raise element precision");
  return ZqElement(ring_, precision, c_);
}

ZqElement ZqElement::lifted_to(std::uint32_t precision) const { return ZqElement(ring_, precision, c_); }

void ZqElement::align(const ZqElement& o) {
  if (ring_ != o.ring_) throw DomainError("ZqElement operands live in different rings");
  if (o.prec_ < prec_) {
    prec_ = o.prec_;
    mod_ = o.mod_;
    for (auto& v : c_) v %= mod_;
  }
}

ZqElement ZqElement::operator-() const {
  ZqElement r = *this;
  for (auto& v : r.c_) v = v == 0 ? 0 : mod_ - v;
  return r;
}

ZqElement& ZqElement::operator+=(const ZqElement& o) {
  align(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = add(c_[i], o.c_[i] % mod_, mod_);
  return *this;
}

ZqElement& ZqElement::operator-=(const ZqElement& o) {
  align(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = sub(c_[i], o.c_[i] % mod_, mod_);
  return *this;
}

ZqElement& ZqElement::operator*=(const ZqElement& o) {
  align(o);
  std::vector<std::uint64_t> b(o.c_);
  for (auto& v : b) v %= mod_;
  std::vector<std::uint64_t> out(c_.size());
  ring_->mul(c_, b, out, mod_);
  c_.swap(out);
  return *this;
}

ZqElement ZqElement::pow(std::uint64_t e) const { return ZqElement(ring_, prec_, ring_->pow(c_, e, mod_)); }

ZqElement ZqElement::inverse() const { return ZqElement(ring_, prec_, ring_->inverse(c_, prec_)); }

bool operator==(const ZqElement& a, const ZqElement& b) {
  if (a.ring_ != b.ring_) return false;
  std::uint64_t m = std::min(a.mod_, b.mod_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] % m != b.c_[i] % m) return false;
  }
  return true;
}

ZqElement frobenius(const ZqElement& z) {
  return ZqElement(z.ring(), z.precision(), z.ring()->frobenius(z.residues(), z.modulus()));
}

PadicInt trace(const ZqElement& z) {
  const std::uint32_t n = z.ring()->degree();
  ZqElement sum = ZqElement::zero(z.ring(), z.precision());
  ZqElement cur = z;
  for (std::uint32_t i = 0; i < n; ++i) {
    sum += cur;
    cur = frobenius(cur);
  }
  auto r = sum.residues();
  for (std::uint32_t i = 1; i < n; ++i) {
    if (r[i] != 0) throw InternalError("Frobenius-orbit sum has a non-constant coordinate");
  }
  return PadicInt::from_residue(z.ring()->prime(), z.precision(), r[0]);
}

ZqElement teichmuller(const ZqElement& z, std::uint32_t target_precision) {
  const std::uint64_t q = z.ring()->residue_field_size();
  ZqElement x = z.with_precision(1).lifted_to(target_precision);
  if (x.is_zero()) return x;
  for (std::uint32_t i = 0; i <= target_precision + 1; ++i) {
    ZqElement next = x.pow(q);
    if (next == x) return x;
    x = std::move(next);
  }
  throw InternalError("Teichmüller iteration did not converge");
}

ZqElement multiplicative_generator(const RingPtr& ring) {
  const std::uint64_t q = ring->residue_field_size();
  const auto factors = prime_factors(q - 1);
  for (std::uint64_t code = 1; code < q; ++code) {
    ZqElement g = ZqElement::from_code(ring, code, 1);
    bool ok = true;
    for (auto r : factors) {
      if (g.pow((q - 1) / r) == ZqElement::one(ring, 1)) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw InternalError("no multiplicative generator found");
}

ZqElement subfield_root(const RingPtr& ring, const ResiduePolynomial& small) {
  const std::uint32_t p = ring->prime();
  const std::uint32_t m = static_cast<std::uint32_t>(small.size() - 1);
  if (m == 0 || ring->degree() % m != 0) throw DomainError("subfield degree must divide the ring degree");
  const std::uint64_t big = ring->residue_field_size();
  const std::uint64_t sub_size = modarith::prime_power(p, m);
  const ZqElement h = multiplicative_generator(ring).pow((big - 1) / (sub_size - 1));
  ZqElement cand = ZqElement::one(ring, 1);
  for (std::uint64_t j = 0; j + 1 < sub_size; ++j) {
    ZqElement acc = ZqElement::zero(ring, 1);
    for (std::size_t i = small.size(); i-- > 0;) {
      acc *= cand;
      acc += ZqElement::scalar(ring, PadicInt::from_residue(p, 1, small[i] % p));
    }
    if (acc.is_zero()) return cand;
    cand *= h;
  }
  throw InternalError("irreducible has no root in the extension");
}

}  // namespace tadic
