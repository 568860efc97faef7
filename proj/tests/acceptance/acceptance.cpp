// Acceptance run: one PASS/FAIL line per criterion A1..A10. All comparisons are
// exact; the only tolerances are the wall-clock budgets printed next to each line.
//
//   acceptance            run everything
//   acceptance A3 A10     run a subset

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tadic/dwork.hpp"
#include "tadic/expsum.hpp"
#include "tadic/polygons.hpp"

using namespace tadic;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

// Pinned parameters.
constexpr std::uint64_t kSeed = 20240601;
constexpr int kRandomPolys = 5;
constexpr std::uint32_t kN = 5;          // p-adic digits for A3, A4, A10
constexpr std::size_t kP = 40;           // pi-adic truncation for A3, A10
constexpr std::size_t kMmax = 4;
constexpr std::uint32_t kSpecN = 3;      // A8
constexpr std::size_t kSpecM = 30;
constexpr int kMinorSamples = 10'000;

PolyInput quadratic(std::uint32_t p, std::uint64_t a2, std::uint64_t a1) {
  PolyInput f;
  f.p = p;
  f.d = 2;
  f.k = 1;
  f.coeffs = {{2, a2}, {1, a1}};
  f.validate();
  return f;
}

/// x^2 + x followed by kRandomPolys polynomials with a_2, a_1 uniform on F_11^x.
std::vector<PolyInput> a3_family() {
  std::vector<PolyInput> out{quadratic(11, 1, 1)};
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::uint64_t> unit(1, 10);
  for (int i = 0; i < kRandomPolys; ++i) {
    const auto a2 = unit(rng);
    const auto a1 = unit(rng);
    out.push_back(quadratic(11, a2, a1));
  }
  return out;
}

std::string describe(const PolyInput& f) {
  std::string s = "p=" + std::to_string(f.p) + " f=";
  bool first = true;
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
    if (!first) s += "+";
    s += std::to_string(it->second) + "x^" + std::to_string(it->first);
    first = false;
  }
  return s;
}

std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = lo; p <= hi; ++p) {
    if (modarith::is_prime(p)) out.push_back(p);
  }
  return out;
}

void fail(Result& r, const std::string& why) {
  if (r.pass) r.detail = why;
  r.pass = false;
}

std::size_t bad_rows(const std::vector<BoundRow>& rows) {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const BoundRow& r) { return r.verdict != Verdict::Pass; }));
}

// ---------------------------------------------------------------------------
// Shared computations, built on first use.

struct DworkRun {
  PolyInput f;
  std::size_t m_trunc = 0;
  std::uint32_t matrix_precision = 0;
  FredholmSeries F;
  CFunction C;
  bool dual = false;
  std::size_t violations = 0;
};

struct CharRun {
  PolyInput f;
  std::size_t M = 0;
  CFunction C;
  NewtonPoints points;
};

std::optional<std::vector<DworkRun>> g_dwork;
std::optional<std::vector<CharRun>> g_char;

const std::vector<DworkRun>& dwork_runs() {
  if (g_dwork) return *g_dwork;
  std::vector<DworkRun> runs;
  for (const auto& f : a3_family()) {
    const auto m_trunc = tail_rule(f.p, f.d, kP);
    const auto precision = cfunction_guard(f.p, kN, kMmax);
    const auto A = build_matrix(f, m_trunc, kP, precision);
    auto F = fredholm(A, kMmax);
    auto C = c_function(f, kMmax, kN, kP);
    const bool dual = dual_path_agrees(F, C.series, kP);
    runs.push_back({f, m_trunc, precision, std::move(F), std::move(C), dual, A.audit.violations});
  }
  g_dwork = std::move(runs);
  return *g_dwork;
}

const std::vector<CharRun>& char_runs() {
  if (g_char) return *g_char;
  std::vector<CharRun> runs;
  for (std::uint32_t p : {11u, 13u}) {
    const std::size_t M = static_cast<std::size_t>(arith_dk_cumulative(p, 2, 1, kMmax)) + 5;
    for (std::uint64_t a2 = 1; a2 < p; ++a2) {
      for (std::uint64_t a1 = 1; a1 < p; ++a1) {
        const auto f = quadratic(p, a2, a1);
        auto C = c_function(f, kMmax, kN, M);
        auto points = newton_points_T(C.series);
        runs.push_back({f, M, std::move(C), std::move(points)});
      }
    }
  }
  g_char = std::move(runs);
  return *g_char;
}

// ---------------------------------------------------------------------------

Result a1() {
  Result r;
  long checks = 0;
  for (auto p : primes_between(5, 199)) {
    for (int d = 2; d <= 6; ++d) {
      if (p % d == 0) continue;
      for (int m = 0; m <= 3 * d; ++m) {
        const auto cum = arith_delta_cumulative(p, d, m + 1);
        const auto closed = arith_polygon_delta_closed(p, d, m);
        ++checks;
        if (cum != closed) {
          fail(r, "p_Delta p=" + std::to_string(p) + " d=" + std::to_string(d) + " m=" + std::to_string(m));
        }
        for (int k = 1; k < d; ++k) {
          ++checks;
          if (arith_dk_cumulative(p, d, k, m + 1) != arith_polygon_dk_closed(p, d, k, m)) {
            fail(r, "p_dk p=" + std::to_string(p) + " d=" + std::to_string(d) + " k=" + std::to_string(k) +
                        " m=" + std::to_string(m));
          }
        }
      }
    }
  }
  if (r.pass) r.detail = std::to_string(checks) + " exact equalities";
  return r;
}

Result a2() {
  Result r;
  long checks = 0;
  for (auto p : primes_between(5, 199)) {
    for (int d = 2; d <= 6; ++d) {
      if (p % d == 0 || p <= static_cast<std::uint32_t>(d * (2 * d + 1))) continue;
      for (int k = 1; k < d; ++k) {
        for (int m = 0; m <= 3 * d; ++m) {
          ++checks;
          if (arith_dk_cumulative(p, d, k, m) < arith_delta_cumulative(p, d, m)) {
            fail(r, "p=" + std::to_string(p) + " d=" + std::to_string(d) + " k=" + std::to_string(k) +
                        " m=" + std::to_string(m));
          }
        }
      }
    }
  }
  if (r.pass) r.detail = std::to_string(checks) + " points, zero violations";
  return r;
}

Result a3() {
  Result r;
  for (const auto& run : dwork_runs()) {
    if (!run.dual) fail(r, describe(run.f) + ": det(1-As) differs from C_f");
  }
  if (r.pass) {
    r.detail = std::to_string(dwork_runs().size()) + " polynomials, m<=4, mod (11^5, pi^40), M_trunc=" +
               std::to_string(dwork_runs().front().m_trunc);
  }
  return r;
}

Result a4() {
  Result r;
  std::size_t rows = 0;
  for (const auto& run : char_runs()) {
    const auto bound = arith_polygon_dk(run.f.p, 2, 1, kMmax);
    std::vector<Valuation> ords;
    for (const auto& pt : run.points) ords.push_back({pt.ord, pt.certified});
    const auto checked = bound_rows(ords, bound);
    rows += checked.size();
    if (bad_rows(checked) != 0) fail(r, describe(run.f));
  }
  if (r.pass) r.detail = std::to_string(char_runs().size()) + " polynomials, " + std::to_string(rows) + " rows";
  return r;
}

Result a5() {
  Result r;
  std::size_t checked = 0;
  std::vector<PolyInput> fs = a3_family();
  for (int k = 1; k <= 2; ++k) {
    PolyInput f;
    f.p = 23;
    f.d = 3;
    f.k = k;
    f.coeffs = k == 1 ? std::map<int, std::uint64_t>{{3, 1}, {1, 1}} : std::map<int, std::uint64_t>{{3, 1}, {2, 1}};
    fs.push_back(f);
    f.coeffs = k == 1 ? std::map<int, std::uint64_t>{{3, 5}, {1, 17}}
                      : std::map<int, std::uint64_t>{{3, 5}, {2, 17}, {1, 2}};
    fs.push_back(f);
  }
  for (const auto& f : fs) {
    try {
      const auto A = build_matrix(f, tail_rule(f.p, f.d, kP), kP, kN);
      checked += A.audit.checked;
      if (A.audit.violations != 0) fail(r, describe(f));
    } catch (const InternalError& e) {
      fail(r, describe(f) + ": " + e.what());
    }
  }
  if (r.pass) r.detail = std::to_string(checked) + " entries, zero violations";
  return r;
}

Result a6() {
  Result r;
  std::mt19937_64 rng(kSeed);
  long samples = 0;
  struct Config {
    std::int64_t p, d, k;
  };
  for (const auto [p, d, k] : {Config{11, 2, 1}, Config{23, 3, 2}}) {
    for (std::int64_t m = 1; m <= 5; ++m) {
      std::vector<std::int64_t> pool(static_cast<std::size_t>(2 * m + d + 1));
      std::iota(pool.begin(), pool.end(), 0);
      for (int t = 0; t < kMinorSamples; ++t) {
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::pair<std::int64_t, std::int64_t>> R;
        for (std::int64_t j = 0; j < m; ++j) R.push_back({pool[j], 1});
        std::sort(R.begin(), R.end());
        std::vector<std::size_t> tau(R.size());
        std::iota(tau.begin(), tau.end(), 0);
        std::shuffle(tau.begin(), tau.end(), rng);
        const auto b = minor_exponent_bound_check(p, d, k, m, 1, R, tau);
        ++samples;
        if (!b.holds) {
          fail(r, "p=" + std::to_string(p) + " m=" + std::to_string(m) + " lhs=" + std::to_string(b.lhs) +
                      " rhs=" + std::to_string(b.rhs));
        }
      }
    }
  }
  if (r.pass) r.detail = std::to_string(samples) + " (R, tau) pairs";
  return r;
}

Result a7() {
  Result r;
  std::size_t rows = 0;
  for (const auto& run : dwork_runs()) {
    const auto hodge = hodge_polygon(2, kMmax).scaled(Rational(run.f.p - 1));
    const auto checked = theorem31_check(run.F, hodge);
    rows += checked.size();
    if (bad_rows(checked) != 0) fail(r, "Dwork path " + describe(run.f));
  }
  for (const auto& run : char_runs()) {
    const auto hodge = hodge_polygon(2, kMmax).scaled(Rational(run.f.p - 1));
    std::vector<Valuation> ords;
    for (const auto& pt : run.points) ords.push_back({pt.ord, pt.certified});
    const auto checked = bound_rows(ords, hodge);
    rows += checked.size();
    if (bad_rows(checked) != 0) fail(r, "T-adic " + describe(run.f));
  }
  if (r.pass) r.detail = std::to_string(rows) + " rows";
  return r;
}

Result a8() {
  Result r;
  const auto bound = arith_polygon_dk(11, 2, 1, 2);
  const auto family = a3_family();
  for (std::size_t i = 1; i < family.size(); ++i) {
    const auto& f = family[i];
    const auto L = l_function(f, kMmax, kSpecN, kSpecM);
    const auto sp = specialize_pi1(L.series, kSpecN);
    const auto rows = bound_rows({sp.ords.begin(), sp.ords.begin() + 3}, bound);
    if (bad_rows(rows) != 0) fail(r, describe(f) + ": pi_1-adic polygon below p_dk");
    if (!sp.ords[2].certified) fail(r, describe(f) + ": s^2 coefficient not certified nonzero");
    for (std::size_t m = 3; m < sp.ords.size(); ++m) {
      if (sp.ords[m].certified) fail(r, describe(f) + ": nonzero s^" + std::to_string(m) + " coefficient");
    }
  }
  if (r.pass) r.detail = std::to_string(kRandomPolys) + " polynomials, N=3, M=30";
  return r;
}

Result a9() {
  Result r;
  std::size_t sums = 0, coeffs = 0;
  auto check_c = [&](const PolyInput& f, const CFunction& C, std::uint32_t N) {
    for (const auto& s : C.sums) {
      ++sums;
      std::uint64_t ql = 1;
      for (int i = 0; i < s.l; ++i) ql *= f.q();
      if (s.series.residues()[0] != (ql - 1) % s.series.modulus()) {
        fail(r, describe(f) + ": S(" + std::to_string(s.l) + ", 0) != q^l - 1");
      }
    }
    if (!(C.series[0] == TSeries::one(Variable::T, f.p, N, C.series[0].length()))) {
      fail(r, describe(f) + ": C_f(0, T) != 1");
    }
    for (const auto& c : C.series.coeffs()) {
      ++coeffs;
      if (c.precision() < N) fail(r, describe(f) + ": coefficient known only mod p^" + std::to_string(c.precision()));
    }
    try {
      const auto L = l_from_c(C, f.q(), N);
      if (!L.paths_agree) fail(r, describe(f) + ": L dual path");
    } catch (const InternalError& e) {
      fail(r, describe(f) + ": " + e.what());
    }
  };
  for (const auto& run : dwork_runs()) check_c(run.f, run.C, kN);
  for (const auto& run : char_runs()) check_c(run.f, run.C, kN);
  if (r.pass) r.detail = std::to_string(sums) + " sums, " + std::to_string(coeffs) + " s-coefficients";
  return r;
}

Result a10() {
  Result r;
  for (const auto& run : dwork_runs()) {
    if (!truncation_stable(run.f, run.m_trunc, kP, run.matrix_precision, kMmax, run.F)) {
      fail(r, describe(run.f) + ": digits moved at M_trunc=" + std::to_string(2 * run.m_trunc));
    }
  }
  if (r.pass) r.detail = std::to_string(dwork_runs().size()) + " polynomials, M_trunc doubled";
  return r;
}

struct Criterion {
  std::string id;
  std::string title;
  double budget_s;
  std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"A1", "polygon closed forms", 10, a1},
      {"A2", "p_dk >= p_Delta", 10, a2},
      {"A3", "trace formula, dual path", 300, a3},
      {"A4", "T-adic bound, all quadratics at p=11,13", 1800, a4},
      {"A5", "Dwork entry valuations", 60, a5},
      {"A6", "minor exponent inequality", 60, a6},
      {"A7", "Hodge bound", 1800, a7},
      {"A8", "pi_1-adic polygon and degree", 600, a8},
      {"A9", "integrality and sanity", 1800, a9},
      {"A10", "truncation stability", 300, a10},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(all.begin(), all.end(), [&](const Criterion& c) { return c.id == w; })) {
      std::fprintf(stderr, "unknown criterion %s\n", w.c_str());
      return 2;
    }
  }

  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      res.pass = false;
      res.detail += " (over budget)";
    }
    if (!res.pass) ++failed;
    std::printf("%-4s %s  %-42s %8.2fs / %.0fs  %s\n", c.id.c_str(), res.pass ? "PASS" : "FAIL", c.title.c_str(),
                secs, c.budget_s, res.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
