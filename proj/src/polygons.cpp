#include "tadic/polygons.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace tadic {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t mod(std::int64_t a, std::int64_t b) { return a - b * floor_div(a, b); }

void require_coprime(std::int64_t p, std::int64_t d) {
  if (d < 1) throw DomainError("d must be positive");
  if (p < 2) throw DomainError("p must be a prime");
  if (std::gcd(p, d) != 1) {
    throw DomainError("gcd(p, d) = " + std::to_string(std::gcd(p, d)) + " for p=" + std::to_string(p) +
                      ", d=" + std::to_string(d));
  }
}

void require_dk(std::int64_t p, std::int64_t d, std::int64_t k) {
  require_coprime(p, d);
  if (k < 1 || k >= d) {
    throw DomainError("need 1 <= k < d, got d=" + std::to_string(d) + ", k=" + std::to_string(k));
  }
}

// sum_{i=1}^{r} (1[{r_{pi}/k} > {r/k}] - 1[{i/k} > {r/k}]) for r < d.
std::int64_t indicator_block(std::int64_t r, std::int64_t p, std::int64_t d, std::int64_t k) {
  std::int64_t s = 0;
  const std::int64_t ref = r % k;
  for (std::int64_t i = 1; i <= r; ++i) {
    s += (mod(p * i, d) % k > ref) ? 1 : 0;
    s -= (i % k > ref) ? 1 : 0;
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polygon

Polygon::Polygon(std::vector<Rational> values, std::vector<bool> at_least)
    : values_(std::move(values)), at_least_(std::move(at_least)) {
  if (values_.empty()) throw DomainError("a polygon needs its value at 0");
  if (at_least_.empty()) at_least_.assign(values_.size() - 1, false);
  if (at_least_.size() + 1 != values_.size()) throw DomainError("one at-least flag per unit segment");
}

Polygon Polygon::from_slopes(const std::vector<Rational>& slopes) {
  std::vector<Rational> v{Rational(0)};
  for (const auto& s : slopes) v.push_back(v.back() + s);
  return Polygon(std::move(v));
}

const Rational& Polygon::operator()(int m) const {
  if (m < 0 || m > length()) {
    throw DomainError("polygon evaluated at " + std::to_string(m) + " outside [0, " +
                      std::to_string(length()) + "]");
  }
  return values_[m];
}

bool Polygon::any_at_least() const { return std::find(at_least_.begin(), at_least_.end(), true) != at_least_.end(); }

bool Polygon::is_convex() const {
  for (int a = 1; a < length(); ++a) {
    if (slope(a) < slope(a - 1)) return false;
  }
  return true;
}

std::vector<Vertex> Polygon::vertices() const {
  std::vector<Vertex> out{{0, values_[0]}};
  for (int m = 1; m < length(); ++m) {
    if (slope(m) != slope(m - 1)) out.push_back({m, values_[m]});
  }
  if (length() > 0) out.push_back({length(), values_.back()});
  return out;
}

Polygon Polygon::scaled(const Rational& c) const {
  std::vector<Rational> v = values_;
  for (auto& y : v) y *= c;
  return Polygon(std::move(v), at_least_);
}

Polygon Polygon::truncated(int n) const {
  if (n < 0 || n > length()) throw DomainError("cannot truncate polygon to " + std::to_string(n));
  return Polygon(std::vector<Rational>(values_.begin(), values_.begin() + n + 1),
                 std::vector<bool>(at_least_.begin(), at_least_.begin() + n));
}

// ---------------------------------------------------------------------------
// Hodge and arithmetic polygons

std::optional<Rational> degree(std::int64_t a, std::int64_t d) {
  if (d <= 0) throw DomainError("degree needs d > 0");
  if (a < 0) return std::nullopt;
  return Rational(a, d);
}

Polygon hodge_polygon(int d, int m_max) {
  if (d < 1) throw DomainError("Hodge polygon needs d >= 1");
  std::vector<Rational> slopes;
  for (int a = 0; a < m_max; ++a) slopes.push_back(*degree(a, d));
  return Polygon::from_slopes(slopes);
}

int delta_in(std::int64_t a, std::int64_t p, std::int64_t d) {
  require_coprime(p, d);
  if (a < 0) throw DomainError("delta_in needs a >= 0");
  const std::int64_t ra = a % d;
  for (std::int64_t i = 0; i < ra; ++i) {
    if (mod(p * i - a, d) == 0) return 1;
  }
  return 0;
}

std::int64_t varpi_delta(std::int64_t a, std::int64_t p, std::int64_t d) {
  return ceil_div((p - 1) * a, d) - delta_in(a, p, d);
}

std::int64_t arith_delta_cumulative(std::int64_t p, std::int64_t d, std::int64_t m) {
  require_coprime(p, d);
  std::int64_t s = 0;
  for (std::int64_t a = 1; a < m; ++a) s += varpi_delta(a, p, d);
  return s;
}

std::int64_t arith_polygon_delta_closed(std::int64_t p, std::int64_t d, std::int64_t m) {
  require_coprime(p, d);
  if (m < 0) throw DomainError("closed form needs m >= 0");
  std::int64_t s = 0;
  for (std::int64_t a = 1; a <= m; ++a) s += ceil_div(p * a, d) - ceil_div(a, d);
  const std::int64_t rm = m % d;
  for (std::int64_t a = 1; a <= rm; ++a) s += mod(p * a, d) > rm ? 1 : 0;
  return s;
}

Polygon arith_polygon_delta(std::int64_t p, std::int64_t d, int m_max) {
  require_coprime(p, d);
  std::vector<Rational> slopes;
  for (int a = 0; a < m_max; ++a) slopes.push_back(varpi_delta(a, p, d));
  Polygon P = Polygon::from_slopes(slopes);
  if (!P.is_convex()) {
    throw InternalError("p_Delta is not convex at p=" + std::to_string(p) + ", d=" + std::to_string(d));
  }
  return P;
}

std::int64_t varpi_dk(std::int64_t a, std::int64_t p, std::int64_t d, std::int64_t k) {
  require_dk(p, d, k);
  if (a < 0) throw DomainError("varpi needs a >= 0");
  if (a == 0) return 0;
  const std::int64_t ra = a % d;
  const std::int64_t ra1 = (a - 1) % d;
  return floor_div(p * a, d) - floor_div(a, d) + mod(p * a, d) / k - ra / k + indicator_block(ra, p, d, k) -
         indicator_block(ra1, p, d, k);
}

std::int64_t arith_dk_cumulative(std::int64_t p, std::int64_t d, std::int64_t k, std::int64_t m) {
  require_dk(p, d, k);
  std::int64_t s = 0;
  for (std::int64_t a = 1; a < m; ++a) s += varpi_dk(a, p, d, k);
  return s;
}

std::int64_t arith_polygon_dk_closed(std::int64_t p, std::int64_t d, std::int64_t k, std::int64_t m) {
  require_dk(p, d, k);
  if (m < 0) throw DomainError("closed form needs m >= 0");
  std::int64_t s = 0;
  for (std::int64_t a = 1; a <= m; ++a) s += floor_div(p * a, d) - floor_div(a, d);
  const std::int64_t rm = m % d;
  const std::int64_t ref = rm % k;
  for (std::int64_t a = 1; a <= rm; ++a) {
    // The cumulative form reads [r_a/k]; here a <= r_m < d, so r_a = a.
    if (a / k != (a % d) / k) throw InternalError("[a/k] and [r_a/k] differ below r_m");
    const std::int64_t rpa = mod(p * a, d);
    s += rpa / k - a / k + (rpa % k > ref ? 1 : 0) - (a % k > ref ? 1 : 0);
  }
  return s;
}

Polygon arith_polygon_dk(std::int64_t p, std::int64_t d, std::int64_t k, int m_max) {
  require_dk(p, d, k);
  std::vector<Rational> slopes;
  for (int a = 0; a < m_max; ++a) slopes.push_back(varpi_dk(a, p, d, k));
  Polygon P = Polygon::from_slopes(slopes);
  if (!P.is_convex()) {
    throw DomainError("the slopes varpi_{d,[0,k]} are not monotone at p=" + std::to_string(p) + ", d=" +
                      std::to_string(d) + ", k=" + std::to_string(k) + "; use the cumulative values");
  }
  return P;
}

// ---------------------------------------------------------------------------
// Newton polygons and comparison

Polygon newton_polygon(const NewtonPoints& input) {
  NewtonPoints pts = input;
  std::sort(pts.begin(), pts.end(), [](const NewtonPoint& a, const NewtonPoint& b) { return a.m < b.m; });
  if (pts.empty() || pts.front().m != 0) throw DomainError("Newton points must include m = 0");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].m == pts[i - 1].m) throw DomainError("duplicate Newton point at m=" + std::to_string(pts[i].m));
  }

  std::vector<std::size_t> hull;
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    const std::int64_t ax = pts[a].m - pts[o].m, ay = pts[a].ord - pts[o].ord;
    const std::int64_t bx = pts[b].m - pts[o].m, by = pts[b].ord - pts[o].ord;
    return ax * by - ay * bx;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), i) <= 0) hull.pop_back();
    hull.push_back(i);
  }

  const int n = pts.back().m;
  std::vector<Rational> values(n + 1);
  std::vector<bool> flags(n, false);
  values[0] = pts[hull[0]].ord;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const auto& a = pts[hull[e]];
    const auto& b = pts[hull[e + 1]];
    const Rational sl(b.ord - a.ord, b.m - a.m);
    const bool flag = !a.certified || !b.certified;
    for (int x = a.m; x < b.m; ++x) {
      values[x + 1] = Rational(a.ord) + sl * (x + 1 - a.m);
      flags[x] = flag;
    }
  }
  return Polygon(std::move(values), std::move(flags));
}

Comparison polygon_ge(const Polygon& P, const Polygon& Q, int m) {
  if (m > P.length() || m > Q.length()) {
    throw DomainError("comparison range [0, " + std::to_string(m) + "] exceeds a polygon's domain");
  }
  for (int a = 0; a <= m; ++a) {
    if (P(a) < Q(a)) return {false, a, P(a), Q(a)};
  }
  return {true, -1, m >= 0 ? P(m) : Rational(0), m >= 0 ? Q(m) : Rational(0)};
}

MinorBound minor_exponent_bound_check(std::int64_t p, std::int64_t d, std::int64_t k, std::int64_t m,
                                      std::int64_t b, const std::vector<std::pair<std::int64_t, std::int64_t>>& R,
                                      const std::vector<std::size_t>& tau) {
  require_dk(p, d, k);
  if (b < 1 || m < 0) throw DomainError("need b >= 1 and m >= 0");
  if (static_cast<std::int64_t>(R.size()) != b * m) {
    throw DomainError("|R| = " + std::to_string(R.size()) + " but b m = " + std::to_string(b * m));
  }
  if (tau.size() != R.size()) throw DomainError("tau must permute R");
  std::vector<bool> seen(R.size(), false);
  for (auto t : tau) {
    if (t >= R.size() || seen[t]) throw DomainError("tau is not a permutation of R");
    seen[t] = true;
  }
  for (const auto& [i, u] : R) {
    if (i < 0 || u < 1 || u > b) throw DomainError("entries of R must lie in N x {1..b}");
  }

  MinorBound out;
  out.hypothesis = p > d * (2 * d + 1);
  for (std::size_t j = 0; j < R.size(); ++j) {
    const std::int64_t e = p * R[j].first - R[tau[j]].first;
    if (e < 0) {
      out.infinite = true;
      continue;
    }
    out.lhs += floor_div(e, d) + ceil_div(e % d, k);
  }
  out.rhs = b * arith_dk_cumulative(p, d, k, m);
  out.holds = out.infinite || out.lhs >= out.rhs;
  return out;
}

}  // namespace tadic
