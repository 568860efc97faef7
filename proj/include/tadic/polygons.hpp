#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tadic/series.hpp"

namespace tadic {

struct Vertex {
  int m = 0;
  Rational y;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Piecewise-linear function on [0, n], linear between consecutive integers,
/// stored by its values at 0..n. A unit segment may be flagged "at least":
/// the true function is only known to lie on or above it there.
class Polygon {
 public:
  explicit Polygon(std::vector<Rational> values, std::vector<bool> at_least = {});

  /// Polygon with value 0 at 0 and the given unit slopes.
  static Polygon from_slopes(const std::vector<Rational>& slopes);

  int length() const { return static_cast<int>(values_.size()) - 1; }
  const Rational& operator()(int m) const;
  const std::vector<Rational>& values() const { return values_; }
  /// Slope on [a, a+1].
  Rational slope(int a) const { return values_[a + 1] - values_[a]; }
  bool at_least(int a) const { return at_least_[a]; }
  bool any_at_least() const;

  bool is_convex() const;
  /// Breakpoints (slope changes) plus both endpoints; collinear points dropped.
  std::vector<Vertex> vertices() const;

  Polygon scaled(const Rational& c) const;
  Polygon truncated(int n) const;

  friend bool operator==(const Polygon& a, const Polygon& b) {
    return a.values_ == b.values_ && a.at_least_ == b.at_least_;
  }

 private:
  std::vector<Rational> values_;
  std::vector<bool> at_least_;
};

/// deg(a) on [0, d]: a/d for a >= 0, nullopt (+infinity) for a < 0.
std::optional<Rational> degree(std::int64_t a, std::int64_t d);

/// H(m) = m(m-1)/(2d) at m = 0..m_max.
Polygon hodge_polygon(int d, int m_max);

int delta_in(std::int64_t a, std::int64_t p, std::int64_t d);
std::int64_t varpi_delta(std::int64_t a, std::int64_t p, std::int64_t d);
/// p_Delta(m) = sum_{a=1}^{m-1} varpi_Delta(a).
std::int64_t arith_delta_cumulative(std::int64_t p, std::int64_t d, std::int64_t m);
/// Closed form for p_Delta(m + 1).
std::int64_t arith_polygon_delta_closed(std::int64_t p, std::int64_t d, std::int64_t m);
/// p_Delta on [0, m_max]; a non-convex result is an InternalError.
Polygon arith_polygon_delta(std::int64_t p, std::int64_t d, int m_max);

std::int64_t varpi_dk(std::int64_t a, std::int64_t p, std::int64_t d, std::int64_t k);
/// p_{d,[0,k]}(m) = sum_{a=1}^{m-1} varpi_{d,[0,k]}(a).
std::int64_t arith_dk_cumulative(std::int64_t p, std::int64_t d, std::int64_t k, std::int64_t m);
/// Telescoped form for p_{d,[0,k]}(m + 1).
std::int64_t arith_polygon_dk_closed(std::int64_t p, std::int64_t d, std::int64_t k, std::int64_t m);
/// p_{d,[0,k]} on [0, m_max]. Throws DomainError when the slopes are not
/// monotone, which happens for some small p.
Polygon arith_polygon_dk(std::int64_t p, std::int64_t d, std::int64_t k, int m_max);

struct NewtonPoint {
  int m = 0;
  int ord = 0;
  /// false: every inspected coefficient vanished and `ord` is only a lower bound.
  bool certified = true;

  friend bool operator==(const NewtonPoint&, const NewtonPoint&) = default;
};

using NewtonPoints = std::vector<NewtonPoint>;

/// Lower convex hull of the points, on [0, max m]. Hull edges ending at an
/// uncertified vertex are flagged at-least.
Polygon newton_polygon(const NewtonPoints& pts);

struct Comparison {
  bool holds = true;
  int witness = -1;
  Rational lhs, rhs;
};

/// P(a) >= Q(a) for integers 0 <= a <= m; on failure the smallest violating a.
Comparison polygon_ge(const Polygon& P, const Polygon& Q, int m);

struct MinorBound {
  bool hypothesis = true;  // p > d(2d+1)
  bool infinite = false;   // some p i - tau(i) < 0, so the term vanishes
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool holds = true;
};

/// sum_{(i,u) in R} ([(p i - tau(i))/d] + ceil(r_{p i - tau(i)}/k)) against
/// b p_{d,[0,k]}(m). `tau[j]` is the index in R of the image of R[j].
MinorBound minor_exponent_bound_check(std::int64_t p, std::int64_t d, std::int64_t k, std::int64_t m,
                                      std::int64_t b, const std::vector<std::pair<std::int64_t, std::int64_t>>& R,
                                      const std::vector<std::size_t>& tau);

}  // namespace tadic
