#include <random>

#include "doctest.h"
#include "tadic/polygons.hpp"

using namespace tadic;

namespace {

std::vector<Rational> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("degree and Hodge polygon") {
  CHECK(*degree(3, 2) == Rational(3, 2));
  CHECK_FALSE(degree(-1, 2).has_value());
  auto H = hodge_polygon(2, 4);
  CHECK(H.values() == std::vector<Rational>{0, 0, Rational(1, 2), Rational(3, 2), 3});
}

TEST_CASE("delta indicator") {
  CHECK(delta_in(5, 7, 5) == 0);
  CHECK(delta_in(10, 7, 5) == 0);
  CHECK(delta_in(2, 7, 5) == 1);
  CHECK(delta_in(3, 7, 5) == 0);
  CHECK_THROWS_AS(delta_in(1, 7, 7), DomainError);
}

TEST_CASE("slopes against an independent evaluation") {
  const std::vector<std::int64_t> dk_11_2_1{0, 5, 10, 15, 20, 25, 30, 35};
  const std::vector<std::int64_t> dk_23_3_2{0, 8, 14, 22, 30, 36, 44, 52};
  const std::vector<std::int64_t> delta_7_5{0, 2, 2, 4, 4, 6, 8, 8};
  const std::vector<std::int64_t> dk_5_6_1{0, 4, 3, 2, 1, 0, 4, 8};
  for (int a = 0; a < 8; ++a) {
    CHECK(varpi_dk(a, 11, 2, 1) == dk_11_2_1[a]);
    CHECK(varpi_dk(a, 23, 3, 2) == dk_23_3_2[a]);
    CHECK(varpi_dk(a, 23, 3, 1) == dk_23_3_2[a]);
    CHECK(varpi_delta(a, 23, 3) == dk_23_3_2[a]);
    CHECK(varpi_delta(a, 7, 5) == delta_7_5[a]);
    CHECK(varpi_dk(a, 5, 6, 1) == dk_5_6_1[a]);
  }
}

TEST_CASE("cumulative polygons") {
  CHECK(arith_delta_cumulative(11, 2, 0) == 0);
  CHECK(arith_delta_cumulative(11, 2, 2) == 5);
  CHECK(arith_polygon_delta_closed(11, 2, 1) == 5);
  CHECK(arith_dk_cumulative(11, 2, 1, 0) == 0);
  CHECK(arith_dk_cumulative(11, 2, 1, 2) == 5);
  CHECK(arith_polygon_dk_closed(11, 2, 1, 1) == 5);
  auto P = arith_polygon_dk(11, 2, 1, 4);
  CHECK(P.values() == ints({0, 0, 5, 15, 30}));
  CHECK(P.is_convex());
  CHECK(arith_polygon_delta(11, 2, 4) == P);
  CHECK(arith_polygon_dk(23, 3, 2, 4).values() == ints({0, 0, 8, 22, 44}));
  CHECK_THROWS_AS(arith_polygon_dk(5, 6, 1, 6), DomainError);
  CHECK_THROWS_AS(arith_polygon_dk(11, 2, 2, 4), DomainError);
}

TEST_CASE("closed forms and the pointwise bound on a small sweep") {
  for (std::int64_t p : {7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53}) {
    for (std::int64_t d = 2; d <= 4; ++d) {
      if (p % d == 0) continue;
      for (std::int64_t m = 0; m <= 3 * d; ++m) {
        CHECK(arith_delta_cumulative(p, d, m + 1) == arith_polygon_delta_closed(p, d, m));
        for (std::int64_t k = 1; k < d; ++k) {
          CHECK(arith_dk_cumulative(p, d, k, m + 1) == arith_polygon_dk_closed(p, d, k, m));
          if (p > d * (2 * d + 1)) CHECK(arith_dk_cumulative(p, d, k, m) >= arith_delta_cumulative(p, d, m));
        }
      }
    }
  }
}

TEST_CASE("slope periodicity") {
  for (std::int64_t p : {5, 7, 11, 13, 29, 97}) {
    for (std::int64_t d = 2; d <= 6; ++d) {
      if (p % d == 0) continue;
      for (std::int64_t a = 1; a < 4 * d; ++a) CHECK(varpi_delta(a + d, p, d) == varpi_delta(a, p, d) + (p - 1));
    }
  }
}

TEST_CASE("arithmetic polygons are convex with integer slopes above p = d(2d+1)") {
  for (std::int64_t p : {11, 13, 23, 29, 37, 41, 53, 59, 97, 101, 199}) {
    for (int d = 2; d <= 6; ++d) {
      if (p % d == 0 || p <= d * (2 * d + 1)) continue;
      auto D = arith_polygon_delta(p, d, 3 * d);
      CHECK(D.is_convex());
      for (int k = 1; k < d; ++k) {
        auto K = arith_polygon_dk(p, d, k, 3 * d);
        CHECK(K.is_convex());
        for (int a = 0; a < K.length(); ++a) CHECK(boost::multiprecision::denominator(K.slope(a)) == 1);
      }
    }
  }
}

TEST_CASE("Newton polygon hull") {
  auto A = newton_polygon({{0, 0}, {1, 5}, {2, 12}});
  CHECK(A.slope(0) == 5);
  CHECK(A.slope(1) == 7);
  CHECK(A.vertices().size() == 3);

  auto B = newton_polygon({{0, 0}, {1, 10}, {2, 12}});
  CHECK(B.slope(0) == 6);
  CHECK(B.slope(1) == 6);
  CHECK(B.vertices() == std::vector<Vertex>{{0, 0}, {2, 12}});

  auto C = newton_polygon({{0, 0}, {1, 5}, {2, 40, false}});
  CHECK_FALSE(C.at_least(0));
  CHECK(C.at_least(1));

  // collinear interior point dropped
  auto D = newton_polygon({{0, 0}, {1, 3}, {2, 6}, {3, 20}});
  CHECK(D.vertices() == std::vector<Vertex>{{0, 0}, {2, 6}, {3, 20}});
}

TEST_CASE("polygon comparison") {
  auto P = arith_polygon_dk(11, 2, 1, 4);
  CHECK(polygon_ge(P, P, 4).holds);
  // (p-1) times the Hodge polygon, shifted up by one unit of slope, overtakes p_Delta
  auto H = hodge_polygon(2, 6).scaled(Rational(10));
  std::vector<Rational> shifted;
  for (int m = 0; m <= 6; ++m) shifted.push_back(H(m) + m);
  auto c = polygon_ge(arith_polygon_delta(11, 2, 6), Polygon(shifted), 6);
  CHECK_FALSE(c.holds);
  CHECK(c.witness == 1);
  CHECK(c.lhs == 0);
  CHECK(c.rhs == 1);
}

TEST_CASE("minor exponent bound") {
  auto one = minor_exponent_bound_check(23, 3, 2, 1, 1, {{1, 1}}, {0});
  CHECK(one.hypothesis);
  CHECK(one.lhs == 8);
  CHECK(one.rhs == 0);
  CHECK(one.holds);

  // R = {(1,1),...,(m,1)}, tau = id
  for (std::int64_t p : {11, 23}) {
    const std::int64_t d = p == 11 ? 2 : 3, k = p == 11 ? 1 : 2;
    for (int m = 1; m <= 5; ++m) {
      std::vector<std::pair<std::int64_t, std::int64_t>> R;
      std::vector<std::size_t> tau;
      std::int64_t expect = 0;
      for (int i = 1; i <= m; ++i) {
        R.push_back({i, 1});
        tau.push_back(i - 1);
        const std::int64_t e = p * i - i;
        expect += e / d + (e % d + k - 1) / k;
      }
      auto r = minor_exponent_bound_check(p, d, k, m, 1, R, tau);
      CHECK(r.lhs == expect);
      CHECK(r.rhs == arith_dk_cumulative(p, d, k, m));
      CHECK(r.holds);
    }
  }

  auto neg = minor_exponent_bound_check(11, 2, 1, 2, 1, {{0, 1}, {1, 1}}, {1, 0});
  CHECK(neg.infinite);
  CHECK(neg.holds);
  CHECK_FALSE(minor_exponent_bound_check(3, 2, 1, 1, 1, {{1, 1}}, {0}).hypothesis);
}
