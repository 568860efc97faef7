#include "tadic/series.hpp"

#include <algorithm>
#include <string>

namespace tadic {

std::string_view variable_name(Variable v) {
  switch (v) {
    case Variable::T: return "T";
    case Variable::Pi: return "pi";
    case Variable::t: return "t";
    case Variable::s: return "s";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// TSeries

TSeries::TSeries(Variable var, std::uint32_t p, std::uint32_t precision,
                 std::vector<std::uint64_t> residues)
    : var_(var), p_(p), n_(precision), mod_(modarith::prime_power(p, precision)), c_(std::move(residues)) {
  if (precision == 0) throw DomainError("series precision must be positive");
  if (c_.empty()) throw DomainError("series needs a positive truncation order");
  for (auto& v : c_) v %= mod_;
}

TSeries::TSeries(Variable var, const std::vector<PadicInt>& coeffs) : var_(var), p_(0), n_(0), mod_(0) {
  if (coeffs.empty()) throw DomainError("series needs a positive truncation order");
  p_ = coeffs.front().prime();
  n_ = coeffs.front().precision();
  for (const auto& c : coeffs) {
    if (c.prime() != p_) throw DomainError("series coefficients over different primes");
    n_ = std::min(n_, c.precision());
  }
  mod_ = modarith::prime_power(p_, n_);
  c_.reserve(coeffs.size());
  for (const auto& c : coeffs) c_.push_back(c.residue() % mod_);
}

TSeries TSeries::zero(Variable var, std::uint32_t p, std::uint32_t precision, std::size_t length) {
  return TSeries(var, p, precision, std::vector<std::uint64_t>(length, 0));
}

TSeries TSeries::one(Variable var, std::uint32_t p, std::uint32_t precision, std::size_t length) {
  return monomial(var, p, precision, length, 0, 1);
}

TSeries TSeries::monomial(Variable var, std::uint32_t p, std::uint32_t precision, std::size_t length,
                          std::size_t degree, std::int64_t coeff) {
  std::vector<std::uint64_t> c(length, 0);
  if (degree < length) c[degree] = modarith::reduce_signed(coeff, modarith::prime_power(p, precision));
  return TSeries(var, p, precision, std::move(c));
}

PadicInt TSeries::operator[](std::size_t i) const {
  if (i >= c_.size()) {
    throw DomainError("coefficient " + std::to_string(i) + " lies beyond the truncation order " +
                      std::to_string(c_.size()));
  }
  return PadicInt::from_residue(p_, n_, c_[i]);
}

TSeries TSeries::truncated(std::size_t length) const {
  if (length > c_.size()) {
    throw DomainError("cannot extend a series truncated at " + std::to_string(c_.size()));
  }
  return TSeries(var_, p_, n_, std::vector<std::uint64_t>(c_.begin(), c_.begin() + length));
}

TSeries TSeries::with_precision(std::uint32_t precision) const {
  if (precision > n_) {
    throw PrecisionError("cannot raise series precision from " + std::to_string(n_) + " to " +
                         std::to_string(precision));
  }
  return TSeries(var_, p_, precision, c_);
}

TSeries TSeries::retagged(Variable var) const {
  TSeries r = *this;
  r.var_ = var;
  return r;
}

bool TSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint64_t v) { return v == 0; });
}

Valuation TSeries::order() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) return {static_cast<int>(i), true};
  }
  return {static_cast<int>(c_.size()), false};
}

void TSeries::align(const TSeries& o) {
  if (var_ != o.var_) {
    throw DomainError("cannot combine a " + std::string(variable_name(var_)) + "-series with a " +
                      std::string(variable_name(o.var_)) + "-series");
  }
  if (p_ != o.p_) throw DomainError("series over different primes");
  if (o.c_.size() < c_.size()) c_.resize(o.c_.size());
  if (o.n_ < n_) {
    n_ = o.n_;
    mod_ = o.mod_;
    for (auto& v : c_) v %= mod_;
  }
}

TSeries TSeries::operator-() const {
  TSeries r = *this;
  for (auto& v : r.c_) v = v == 0 ? 0 : mod_ - v;
  return r;
}

TSeries& TSeries::operator+=(const TSeries& o) {
  align(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = modarith::add(c_[i], o.c_[i] % mod_, mod_);
  return *this;
}

TSeries& TSeries::operator-=(const TSeries& o) {
  align(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = modarith::sub(c_[i], o.c_[i] % mod_, mod_);
  return *this;
}

TSeries& TSeries::operator*=(const TSeries& o) {
  align(o);
  const std::size_t L = c_.size();
  std::vector<std::uint64_t> out(L, 0);
  for (std::size_t i = 0; i < L; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < L; ++j) {
      std::uint64_t b = o.c_[j] % mod_;
      if (b == 0) continue;
      out[i + j] = modarith::add(out[i + j], modarith::mul(c_[i], b, mod_), mod_);
    }
  }
  c_.swap(out);
  return *this;
}

TSeries TSeries::scaled(const PadicInt& c) const {
  if (c.prime() != p_) throw DomainError("scalar over a different prime");
  TSeries r = *this;
  if (c.precision() < n_) r = r.with_precision(c.precision());
  const std::uint64_t s = c.residue() % r.mod_;
  for (auto& v : r.c_) v = modarith::mul(v, s, r.mod_);
  return r;
}

TSeries TSeries::divide_exact(std::int64_t n) const {
  std::vector<PadicInt> out;
  out.reserve(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out.push_back((*this)[i].divide_exact(n));
  return TSeries(var_, out);
}

TSeries TSeries::inverse() const {
  if (c_[0] % p_ == 0) throw DomainError("series inverse needs a unit constant term");
  const std::size_t L = c_.size();
  std::vector<std::uint64_t> b(L, 0);
  const std::uint64_t b0 = modarith::inverse(c_[0], p_, mod_);
  b[0] = b0;
  for (std::size_t n = 1; n < L; ++n) {
    std::uint64_t s = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (c_[j] != 0) s = modarith::add(s, modarith::mul(c_[j], b[n - j], mod_), mod_);
    }
    b[n] = modarith::sub(0, modarith::mul(b0, s, mod_), mod_);
  }
  return TSeries(var_, p_, n_, std::move(b));
}

bool operator==(const TSeries& a, const TSeries& b) {
  if (a.var_ != b.var_ || a.p_ != b.p_) return false;
  const std::size_t L = std::min(a.c_.size(), b.c_.size());
  const std::uint64_t m = std::min(a.mod_, b.mod_);
  for (std::size_t i = 0; i < L; ++i) {
    if (a.c_[i] % m != b.c_[i] % m) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Binomial, exp, log

std::uint32_t binomial_guard(std::uint32_t p, std::size_t length) {
  if (length <= 1) return 1;
  return static_cast<std::uint32_t>((length - 1 + p - 2) / (p - 1)) + 1;
}

BinomialExpander::BinomialExpander(std::uint32_t p, std::uint32_t working, std::uint32_t target,
                                   std::size_t length)
    : p_(p), working_(working), target_(target), length_(length) {
  if (length == 0) throw DomainError("binomial series needs a positive truncation order");
  const int worst = modarith::factorial_valuation(length - 1, p);
  if (static_cast<int>(working) < static_cast<int>(target) + worst) {
    throw PrecisionError("binomial series to T^" + std::to_string(length) + " at precision p^" +
                         std::to_string(target) + " needs input precision >= " +
                         std::to_string(target + worst) + ", got " + std::to_string(working));
  }
  wmod_ = modarith::prime_power(p, working);
  tmod_ = modarith::prime_power(p, target);
  fact_val_.resize(length);
  fact_unit_inv_.resize(length);
  std::uint64_t unit = 1;  // unit part of k! mod p^target
  int val = 0;
  for (std::size_t k = 0; k < length; ++k) {
    if (k > 0) {
      std::uint64_t f = k;
      while (f % p == 0) {
        f /= p;
        ++val;
      }
      unit = modarith::mul(unit, f % tmod_, tmod_);
    }
    fact_val_[k] = val;
    fact_unit_inv_[k] = modarith::inverse(unit, p, tmod_);
  }
  p_pow_.resize(worst + 1);
  p_pow_[0] = 1;
  for (int v = 1; v <= worst; ++v) p_pow_[v] = p_pow_[v - 1] * p;
}

void BinomialExpander::accumulate(std::uint64_t z, std::uint64_t count, std::span<std::uint64_t> acc) const {
  z %= wmod_;
  count %= tmod_;
  std::uint64_t num = 1 % wmod_;
  for (std::size_t k = 0; k < length_ && k < acc.size(); ++k) {
    if (k > 0) num = modarith::mul(num, modarith::sub(z, (k - 1) % wmod_, wmod_), wmod_);
    std::uint64_t shifted = num;
    if (fact_val_[k] > 0) {
      const std::uint64_t pv = p_pow_[fact_val_[k]];
      if (shifted % pv != 0) throw InternalError("falling factorial not divisible by k!");
      shifted /= pv;
    }
    std::uint64_t coeff = modarith::mul(shifted % tmod_, fact_unit_inv_[k], tmod_);
    acc[k] = modarith::add(acc[k], modarith::mul(coeff, count, tmod_), tmod_);
  }
}

TSeries binomial_series(const PadicInt& z, std::size_t length, std::uint32_t target) {
  BinomialExpander ex(z.prime(), z.precision(), target, length);
  std::vector<std::uint64_t> acc(length, 0);
  ex.accumulate(z.residue(), 1, acc);
  return TSeries(Variable::T, z.prime(), target, std::move(acc));
}

namespace {

TSeries finish(Variable var, const std::vector<PadicInt>& coeffs, std::uint32_t target, const char* what) {
  TSeries r(var, coeffs);
  if (r.precision() < target) {
    throw PrecisionError(std::string(what) + ": only " + std::to_string(r.precision()) +
                         " certified digits remain, " + std::to_string(target) +
                         " requested; raise the working precision");
  }
  return r.with_precision(target);
}

}  // namespace

TSeries exp_series(const TSeries& a, std::uint32_t target) {
  if (a.residues()[0] != 0) throw DomainError("exp_series needs a zero constant term");
  const std::size_t L = a.length();
  std::vector<PadicInt> e;
  e.reserve(L);
  e.push_back(PadicInt(a.prime(), a.precision(), 1));
  for (std::size_t n = 1; n < L; ++n) {
    PadicInt s(a.prime(), a.precision(), 0);
    for (std::size_t j = 1; j <= n; ++j) {
      if (a.residues()[j] == 0) continue;
      s += a[j] * PadicInt(a.prime(), a.precision(), static_cast<std::int64_t>(j)) * e[n - j];
    }
    e.push_back(s.divide_exact(static_cast<std::int64_t>(n)));
  }
  return finish(a.var(), e, target, "exp_series");
}

TSeries log_series(const TSeries& f, std::uint32_t target) {
  if (f.residues()[0] != 1 % f.modulus()) throw DomainError("log_series needs constant term 1");
  const std::size_t L = f.length();
  std::vector<std::uint64_t> deriv(L, 0);
  for (std::size_t i = 1; i < L; ++i) {
    deriv[i - 1] = modarith::mul(f.residues()[i], i % f.modulus(), f.modulus());
  }
  TSeries g = TSeries(f.var(), f.prime(), f.precision(), std::move(deriv)) * f.inverse();
  std::vector<PadicInt> out;
  out.reserve(L);
  out.push_back(PadicInt(f.prime(), f.precision(), 0));
  for (std::size_t n = 1; n < L; ++n) out.push_back(g[n - 1].divide_exact(static_cast<std::int64_t>(n)));
  return finish(f.var(), out, target, "log_series");
}

// ---------------------------------------------------------------------------
// Artin–Hasse and the T -> pi substitution

std::vector<Rational> artin_hasse_rational(std::uint32_t p, std::size_t length) {
  std::vector<Rational> lam(length);
  if (length == 0) return lam;
  lam[0] = 1;
  for (std::size_t n = 1; n < length; ++n) {
    Rational s = 0;
    for (std::uint64_t q = 1; q <= n; q *= p) {
      s += lam[n - q];
      if (q > n / p) break;
    }
    lam[n] = s / static_cast<long long>(n);
  }
  return lam;
}

TSeries artin_hasse(std::uint32_t p, std::size_t length, std::uint32_t precision, Variable var) {
  const std::uint64_t m = modarith::prime_power(p, precision);
  const auto lam = artin_hasse_rational(p, length);
  std::vector<std::uint64_t> c(length);
  const BigInt bm = m;
  for (std::size_t i = 0; i < length; ++i) {
    BigInt num = boost::multiprecision::numerator(lam[i]);
    BigInt den = boost::multiprecision::denominator(lam[i]);
    if (den % p == 0) {
      throw InternalError("Artin–Hasse coefficient " + std::to_string(i) + " is not p-integral");
    }
    BigInt nr = num % bm;
    if (nr < 0) nr += bm;
    const auto n64 = static_cast<std::uint64_t>(nr);
    const auto d64 = static_cast<std::uint64_t>(den % bm);
    c[i] = modarith::mul(n64, modarith::inverse(d64, p, m), m);
  }
  return TSeries(var, p, precision, std::move(c));
}

TSeries compose_T_into_pi(const TSeries& f, std::size_t pi_length) {
  if (f.var() != Variable::T) throw DomainError("compose_T_into_pi expects a T-series");
  if (f.length() < pi_length) {
    throw DomainError("T-truncation " + std::to_string(f.length()) + " is below the pi-truncation " +
                      std::to_string(pi_length));
  }
  TSeries u = artin_hasse(f.prime(), pi_length, f.precision(), Variable::Pi);
  u -= TSeries::one(Variable::Pi, f.prime(), f.precision(), pi_length);
  TSeries r = TSeries::monomial(Variable::Pi, f.prime(), f.precision(), pi_length, 0,
                                static_cast<std::int64_t>(f.residues()[pi_length - 1]));
  for (std::size_t j = pi_length - 1; j-- > 0;) {
    r *= u;
    r += TSeries::monomial(Variable::Pi, f.prime(), f.precision(), pi_length, 0,
                           static_cast<std::int64_t>(f.residues()[j]));
  }
  return r;
}

// ---------------------------------------------------------------------------
// BiSeries

BiSeries::BiSeries(std::vector<TSeries> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw DomainError("BiSeries needs at least the s^0 coefficient");
}

BiSeries BiSeries::one(Variable var, std::uint32_t p, std::uint32_t precision, std::size_t length,
                       std::size_t s_order) {
  std::vector<TSeries> c;
  c.reserve(s_order);
  c.push_back(TSeries::one(var, p, precision, length));
  for (std::size_t m = 1; m < s_order; ++m) c.push_back(TSeries::zero(var, p, precision, length));
  return BiSeries(std::move(c));
}

BiSeries BiSeries::operator*(const BiSeries& o) const {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  std::vector<TSeries> out;
  out.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    TSeries acc = c_[0] * o.c_[m];
    for (std::size_t j = 1; j <= m; ++j) acc += c_[j] * o.c_[m - j];
    out.push_back(std::move(acc));
  }
  return BiSeries(std::move(out));
}

BiSeries BiSeries::inverse() const {
  std::vector<TSeries> g;
  g.reserve(c_.size());
  const TSeries g0 = c_[0].inverse();
  g.push_back(g0);
  for (std::size_t m = 1; m < c_.size(); ++m) {
    TSeries acc = c_[1] * g[m - 1];
    for (std::size_t j = 2; j <= m; ++j) acc += c_[j] * g[m - j];
    g.push_back(-(g0 * acc));
  }
  return BiSeries(std::move(g));
}

BiSeries BiSeries::scale_s(const PadicInt& c) const {
  std::vector<TSeries> out;
  out.reserve(c_.size());
  PadicInt power(c.prime(), c.precision(), 1);
  for (const auto& coeff : c_) {
    out.push_back(coeff.scaled(power));
    power *= c;
  }
  return BiSeries(std::move(out));
}

bool operator==(const BiSeries& a, const BiSeries& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t m = 0; m < a.c_.size(); ++m) {
    if (!(a.c_[m] == b.c_[m])) return false;
  }
  return true;
}

BiSeries exp_from_weighted_terms(const std::vector<TSeries>& w, std::size_t m_max) {
  if (m_max == 0) throw DomainError("exp_from_weighted_terms needs m_max >= 1");
  if (w.size() <= m_max) throw DomainError("need weighted terms w_1..w_m_max");
  const TSeries& ref = w[1];
  std::vector<TSeries> f;
  f.reserve(m_max + 1);
  f.push_back(TSeries::one(ref.var(), ref.prime(), ref.precision(), ref.length()));
  for (std::size_t m = 1; m <= m_max; ++m) {
    TSeries acc = w[1] * f[m - 1];
    for (std::size_t l = 2; l <= m; ++l) acc += w[l] * f[m - l];
    try {
      f.push_back(acc.divide_exact(static_cast<std::int64_t>(m)));
    } catch (const DomainError&) {
      throw InternalError("s^" + std::to_string(m) + " coefficient is not p-integral");
    }
  }
  return BiSeries(std::move(f));
}

}  // namespace tadic
