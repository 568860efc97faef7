#include "doctest.h"
#include "tadic/dwork.hpp"

using namespace tadic;

namespace {

PolyInput poly(std::uint32_t p, int d, int k, std::map<int, std::uint64_t> c) {
  PolyInput f;
  f.p = p;
  f.d = d;
  f.k = k;
  f.coeffs = std::move(c);
  f.validate();
  return f;
}

}  // namespace

TEST_CASE("gamma bound") {
  CHECK(gamma_bound(0, 2, 1) == 0);
  CHECK(gamma_bound(2, 2, 1) == 1);
  CHECK(gamma_bound(3, 2, 1) == 2);
  CHECK(gamma_bound(22, 3, 2) == 8);
}

TEST_CASE("tail rule") {
  CHECK(tail_rule(11, 2, 40) == 11);
  CHECK(tail_rule(11, 2, 20) == 7);
}

TEST_CASE("first gammas") {
  const std::uint32_t p = 11, N = 4;
  const std::size_t P = 12;
  auto f = poly(p, 2, 1, {{2, 3}, {1, 7}});
  auto g = ef_coefficients(f, 6, P, N);
  auto a1 = teichmuller(PadicInt(p, N, 7));
  auto a2 = teichmuller(PadicInt(p, N, 3));
  CHECK(g[0] == TSeries::one(Variable::Pi, p, N, P));
  auto pi = TSeries::monomial(Variable::Pi, p, N, P, 1);
  auto pi2 = TSeries::monomial(Variable::Pi, p, N, P, 2);
  CHECK(g[1] == pi.scaled(a1));
  auto half = PadicInt(p, N, 2).inverse();
  CHECK(g[2] == pi.scaled(a2) + pi2.scaled(half * a1 * a1));
  CHECK(g[3].order().value >= 2);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(g[i] == ef_coefficient_explicit(f, i, P, N));
    CHECK(g[i].order().value >= gamma_bound(static_cast<std::int64_t>(i), 2, 1));
  }
}

TEST_CASE("matrix shape and audit") {
  auto f = poly(11, 2, 1, {{2, 1}, {1, 1}});
  auto A = build_matrix(f, 7, 20, 3);
  CHECK(A.size == 7);
  CHECK(A.audit.violations == 0);
  CHECK(A.audit.checked > 0);
  CHECK(A.at(0, 0) == TSeries::one(Variable::Pi, 11, A.precision, 20));
  CHECK(A.at(0, 1).is_zero());
  CHECK(A.at(1, 3) == A.gammas[8]);
  CHECK_THROWS_AS(build_matrix(f, 4, 20, 3), DomainError);
  DworkOptions small;
  small.allow_small_truncation = true;
  CHECK_NOTHROW(build_matrix(f, 4, 20, 3, small));

  PolyInput g = f;
  g.b = 2;
  CHECK_THROWS_AS(build_matrix(g, 7, 20, 3), UnsupportedError);
}

TEST_CASE("one by one determinant") {
  auto f = poly(11, 2, 1, {{2, 1}, {1, 1}});
  DworkOptions small;
  small.allow_small_truncation = true;
  auto A = build_matrix(f, 1, 10, 3, small);
  auto F = fredholm(A, 1);
  CHECK(F.det_coefficient(0) == TSeries::one(Variable::Pi, 11, F.c[0].precision(), 10));
  CHECK(F.det_coefficient(1) == -A.at(0, 0).with_precision(F.c[1].precision()));
}

TEST_CASE("Newton identities agree with principal minors") {
  auto f = poly(11, 2, 1, {{2, 4}, {1, 9}});
  auto A = build_matrix(f, 7, 20, 4);
  auto N = fredholm(A, 3);
  auto M = fredholm_minors(A, 3);
  for (std::size_t m = 0; m <= 3; ++m) CHECK(N.c[m] == M.c[m]);
}

TEST_CASE("trace formula and stability at small precision") {
  const std::uint32_t p = 11, N = 3;
  const std::size_t P = 20, m_max = 3;
  auto f = poly(p, 2, 1, {{2, 1}, {1, 1}});
  const auto mt = tail_rule(p, 2, P);
  auto A = build_matrix(f, mt, P, cfunction_guard(p, N, m_max));
  auto F = fredholm(A, m_max);
  auto C = c_function(f, m_max, N, P);
  CHECK(dual_path_agrees(F, C.series, P));
  CHECK(truncation_stable(f, mt, P, cfunction_guard(p, N, m_max), m_max, F));

  auto rows = theorem31_check(F, arith_polygon_dk(p, 2, 1, m_max));
  for (const auto& r : rows) CHECK(r.verdict == Verdict::Pass);
  auto hodge = theorem31_check(F, hodge_polygon(2, m_max).scaled(Rational(p - 1)));
  for (const auto& r : hodge) CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("verdict rules") {
  Polygon P(std::vector<Rational>{0, 0, 5});
  auto rows = bound_rows({{0, true}, {4, true}, {7, false}}, P);
  CHECK(rows[0].verdict == Verdict::Pass);
  CHECK(rows[1].verdict == Verdict::Pass);
  CHECK(rows[2].verdict == Verdict::Pass);
  rows = bound_rows({{0, true}, {0, true}, {3, false}}, P);
  CHECK(rows[2].verdict == Verdict::Uncertified);
  rows = bound_rows({{0, true}, {0, true}, {3, true}}, P);
  CHECK(rows[2].verdict == Verdict::Fail);
  CHECK(to_string(Verdict::Uncertified) == "uncertified");
}
