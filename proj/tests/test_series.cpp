#include <random>

#include "doctest.h"
#include "tadic/series.hpp"

using namespace tadic;

namespace {

std::vector<std::uint64_t> res(const TSeries& s) { return {s.residues().begin(), s.residues().end()}; }

TSeries random_series(std::mt19937_64& rng, Variable v, std::uint32_t p, std::uint32_t N, std::size_t M,
                      bool zero_constant) {
  std::uint64_t mod = 1;
  for (std::uint32_t i = 0; i < N; ++i) mod *= p;
  std::uniform_int_distribution<std::uint64_t> pick(0, mod - 1);
  std::vector<std::uint64_t> c(M);
  for (auto& x : c) x = pick(rng);
  if (zero_constant) c[0] = 0;
  return TSeries(v, p, N, c);
}

}  // namespace

TEST_CASE("ring operations") {
  auto a = TSeries(Variable::T, 5, 3, {1, 2, 3});
  auto b = TSeries(Variable::T, 5, 3, {4, 0, 1});
  CHECK(res(a * b) == std::vector<std::uint64_t>{4, 8, 13});
  CHECK(res(a + b) == std::vector<std::uint64_t>{5, 2, 4});
  CHECK(a * a.inverse() == TSeries::one(Variable::T, 5, 3, 3));
  CHECK_THROWS_AS(a * TSeries(Variable::Pi, 5, 3, {1, 0, 0}), DomainError);
  CHECK_THROWS_AS(TSeries(Variable::T, 5, 3, {5, 1}).inverse(), DomainError);

  auto t = TSeries::monomial(Variable::T, 5, 3, 6, 2, 5);
  CHECK(t.order() == Valuation{2, true});
  CHECK(TSeries::zero(Variable::T, 5, 3, 6).order() == Valuation{6, false});
  CHECK(t.divide_exact(5).precision() == 2);
}

TEST_CASE("binomial series") {
  CHECK(res(binomial_series(PadicInt(5, 3, 1), 4, 3)) == std::vector<std::uint64_t>{1, 1, 0, 0});
  CHECK(res(binomial_series(PadicInt(5, 3, 2), 4, 3)) == std::vector<std::uint64_t>{1, 2, 1, 0});
  CHECK(res(binomial_series(PadicInt(3, 5, -1), 4, 4)) == std::vector<std::uint64_t>{1, 80, 1, 80});
  // three digits cannot certify C(z, 3) mod 3^4 after dividing by 3!
  CHECK_THROWS_AS(binomial_series(PadicInt(3, 4, -1), 4, 4), PrecisionError);
  CHECK_THROWS_AS(BinomialExpander(3, 4, 4, 4), PrecisionError);
}

TEST_CASE("binomial series is multiplicative in z") {
  std::mt19937_64 rng(11);
  const std::uint32_t p = 7, N = 3;
  const std::size_t M = 12;
  const std::uint32_t W = N + binomial_guard(p, M);
  std::uniform_int_distribution<std::int64_t> pick(0, 100000);
  for (int t = 0; t < 40; ++t) {
    PadicInt z1(p, W, pick(rng)), z2(p, W, pick(rng));
    CHECK(binomial_series(z1 + z2, M, N) == binomial_series(z1, M, N) * binomial_series(z2, M, N));
  }
}

TEST_CASE("guard bound covers v_p((M-1)!)") {
  for (std::uint32_t p : {2u, 3u, 5u, 11u}) {
    for (std::size_t M = 1; M < 200; ++M) {
      CHECK(binomial_guard(p, M) >= static_cast<std::uint32_t>(modarith::factorial_valuation(M - 1, p)));
    }
  }
}

TEST_CASE("exp and log") {
  CHECK(exp_series(TSeries::zero(Variable::T, 11, 3, 5), 3) == TSeries::one(Variable::T, 11, 3, 5));
  auto e = exp_series(TSeries::monomial(Variable::T, 11, 3 + binomial_guard(11, 5), 5, 1), 3);
  CHECK(e.precision() == 3);
  CHECK(res(e) == std::vector<std::uint64_t>{1, 1, 666, 222, 721});
  CHECK_THROWS_AS(exp_series(TSeries::one(Variable::T, 11, 3, 5), 3), DomainError);

  // below T^p every division is by a unit, so exp stays integral for any a
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const std::uint32_t p = 11, N = 3;
    const std::size_t M = 10;
    auto a = random_series(rng, Variable::T, p, N + 2 * binomial_guard(p, M), M, true);
    auto back = log_series(exp_series(a, N + binomial_guard(p, M)), N);
    CHECK(back == a.with_precision(N));
  }
}

TEST_CASE("Artin-Hasse coefficients") {
  auto lam = artin_hasse_rational(5, 12);
  CHECK(lam[0] == 1);
  CHECK(lam[1] == 1);
  CHECK(lam[2] == Rational(1, 2));
  CHECK(lam[3] == Rational(1, 6));
  CHECK(lam[4] == Rational(1, 24));
  CHECK(lam[5] == Rational(5, 24));
  CHECK(lam[9] == Rational(605, 72576));
  CHECK(lam[11] == Rational(32377, 1596672));
  auto E = artin_hasse(5, 12, 2);
  CHECK(E[2].residue() == 13);

  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (const auto& l : artin_hasse_rational(p, 60)) {
      CHECK(boost::multiprecision::denominator(l) % p != 0);
    }
  }
}

TEST_CASE("T to pi substitution") {
  const std::uint32_t p = 5, N = 3;
  const std::size_t P = 10;
  auto E = artin_hasse(p, P, N, Variable::Pi);
  auto onePlusT = TSeries(Variable::T, p, N, std::vector<std::uint64_t>{1, 1, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(compose_T_into_pi(onePlusT, P) == E);
  auto EminusOne = E - TSeries::one(Variable::Pi, p, N, P);
  CHECK(compose_T_into_pi(TSeries::monomial(Variable::T, p, N, P, 1), P) == EminusOne);

  auto u = TSeries(Variable::T, p, N, std::vector<std::uint64_t>{0, 0, 0, 3, 1, 4, 0, 2, 0, 0});
  CHECK(compose_T_into_pi(u, P).order() == Valuation{3, true});
  CHECK_THROWS_AS(compose_T_into_pi(u.truncated(5), P), DomainError);
}

TEST_CASE("T to pi substitution is a ring homomorphism") {
  std::mt19937_64 rng(9);
  const std::uint32_t p = 7, N = 3;
  const std::size_t M = 14;
  for (int t = 0; t < 20; ++t) {
    auto a = random_series(rng, Variable::T, p, N, M, false);
    auto b = random_series(rng, Variable::T, p, N, M, false);
    CHECK(compose_T_into_pi(a + b, M) == compose_T_into_pi(a, M) + compose_T_into_pi(b, M));
    CHECK(compose_T_into_pi(a * b, M) == compose_T_into_pi(a, M) * compose_T_into_pi(b, M));
  }
}

TEST_CASE("BiSeries and the weighted exponential") {
  const std::uint32_t p = 7, N = 3;
  const std::size_t M = 6, m_max = 3;
  std::mt19937_64 rng(2);
  std::vector<TSeries> w{TSeries::zero(Variable::T, p, N + 1, M)};
  for (std::size_t l = 1; l <= m_max; ++l) w.push_back(random_series(rng, Variable::T, p, N + 1, M, false));
  auto F = exp_from_weighted_terms(w, m_max);
  CHECK(F[0] == TSeries::one(Variable::T, p, N, M));
  CHECK(F[1] == w[1]);
  // (w1^2 + w2) / 2
  CHECK(F[2] == (w[1] * w[1] + w[2]).divide_exact(2));
  CHECK(F * F.inverse() == BiSeries::one(Variable::T, p, N, M, m_max + 1));

  // exp(sum w_l (2s)^l / l) = F(2s)
  auto two = PadicInt(p, N + 1, 2);
  std::vector<TSeries> w2{w[0]};
  for (std::size_t l = 1; l <= m_max; ++l) w2.push_back(w[l].scaled(two.pow(l)));
  CHECK(exp_from_weighted_terms(w2, m_max) == F.scale_s(two));

  // w_1 = 1, w_2 = 0: F_2 = 1/2 is integral at 7, but at 2 it is not
  std::vector<TSeries> bad{TSeries::zero(Variable::T, 2, 3, 2), TSeries::one(Variable::T, 2, 3, 2),
                           TSeries::zero(Variable::T, 2, 3, 2)};
  CHECK_THROWS_AS(exp_from_weighted_terms(bad, 2), InternalError);
}
