#include "tadic/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>

#include "CLI11.hpp"

namespace tadic::cli {

namespace {

std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t n = std::max<std::uint32_t>(lo, 2); n <= hi; ++n) {
    if (modarith::is_prime(n)) out.push_back(n);
  }
  return out;
}

Polygon dk_polygon(std::int64_t p, int d, int k, int n) {
  std::vector<Rational> v;
  for (int m = 0; m <= n; ++m) v.emplace_back(arith_dk_cumulative(p, d, k, m));
  return Polygon(std::move(v));
}

Json hypotheses(const RunConfig& cfg) {
  Json h;
  h["p_gt_3d"] = cfg.p_gt_3d();
  h["p_gt_d(2d+1)"] = cfg.p_gt_d2d1();
  h["p_coprime_d"] = cfg.d % static_cast<int>(cfg.p) != 0;
  return h;
}

Json header(const RunConfig& cfg) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = cfg.command;
  j["config"] = cfg.echo();
  j["hypotheses"] = hypotheses(cfg);
  return j;
}

std::vector<Valuation> orders(const BiSeries& s) {
  std::vector<Valuation> out;
  for (std::size_t m = 0; m < s.s_order(); ++m) out.push_back(s[m].order());
  return out;
}

std::string rows_csv(const std::vector<BoundRow>& rows, const std::string& table) {
  std::string s;
  for (const auto& r : rows) {
    s += table + "," + std::to_string(r.m) + "," + to_string(r.ord) + "," + (r.ord.certified ? "true" : "false") + "," +
         r.bound.str() + "," + to_string(r.verdict) + "\n";
  }
  return s;
}

const char* kRowsHeader = "table,m,ord,certified,bound,verdict\n";

Json coeffs_json(const std::map<int, std::uint64_t>& c) {
  Json j = Json::object();
  for (auto it = c.rbegin(); it != c.rend(); ++it) j[std::to_string(it->first)] = std::to_string(it->second);
  return j;
}

ExpSumOptions sum_options(const RunConfig& cfg) { return {cfg.kernel, cfg.budget}; }

FredholmSeries at_precision(const FredholmSeries& F, std::uint32_t N) {
  FredholmSeries out;
  for (const auto& c : F.c) out.c.push_back(c.with_precision(N));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Outcome cmd_polygons(const RunConfig& cfg) {
  Outcome out;
  out.report = header(cfg);
  if (cfg.sweep) {
    if (cfg.p_min > cfg.p_max || cfg.d_min < 2 || cfg.d_min > cfg.d_max || cfg.m_factor < 0) {
      throw DomainError("invalid sweep ranges");
    }
    Json violations = Json::array();
    out.csv = "kind,p,d,k,m,lhs,rhs\n";
    std::size_t tuples = 0, checks = 0;
    for (auto p : primes_between(cfg.p_min, cfg.p_max)) {
      for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
        if (d % static_cast<int>(p) == 0) continue;
        const bool hyp = p > static_cast<std::uint32_t>(d * (2 * d + 1));
        for (int k = 1; k < d; ++k) {
          ++tuples;
          for (int m = 0; m <= cfg.m_factor * d; ++m) {
            auto report = [&](const std::string& kind, std::int64_t lhs, std::int64_t rhs) {
              violations.push_back({{"kind", kind}, {"p", str(p)}, {"d", str(d)}, {"k", str(k)}, {"m", str(m)},
                                    {"lhs", str(lhs)}, {"rhs", str(rhs)}});
              out.csv += kind + "," + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(k) + "," +
                         std::to_string(m) + "," + std::to_string(lhs) + "," + std::to_string(rhs) + "\n";
            };
            ++checks;
            if (k == 1) {
              const auto cum = arith_delta_cumulative(p, d, m + 1), cl = arith_polygon_delta_closed(p, d, m);
              if (cum != cl) report("delta_closed_form", cum, cl);
            }
            const auto cum = arith_dk_cumulative(p, d, k, m + 1), cl = arith_polygon_dk_closed(p, d, k, m);
            if (cum != cl) report("dk_closed_form", cum, cl);
            if (hyp) {
              const auto dk = arith_dk_cumulative(p, d, k, m), delta = arith_delta_cumulative(p, d, m);
              if (dk < delta) report("dk_below_delta", dk, delta);
            }
          }
        }
      }
    }
    out.report["tuples"] = str(static_cast<std::int64_t>(tuples));
    out.report["checks"] = str(static_cast<std::int64_t>(checks));
    out.report["violations"] = violations;
    out.report["verdict"] = violations.empty() ? "pass" : "fail";
    out.plot = "# sweep has no plot data\n";
    out.exit_code = violations.empty() ? kOk : kVerdictFailed;
    return out;
  }

  const int n = static_cast<int>(cfg.m_max.value_or(3 * cfg.d));
  const std::int64_t p = cfg.p;
  const Polygon dk = dk_polygon(p, cfg.d, cfg.k, n);
  const Polygon delta = arith_polygon_delta(p, cfg.d, n);
  const Polygon hodge = hodge_polygon(cfg.d, n);

  bool closed_ok = true;
  for (int m = 0; m < n; ++m) {
    closed_ok = closed_ok && arith_polygon_delta_closed(p, cfg.d, m) == arith_delta_cumulative(p, cfg.d, m + 1);
    closed_ok = closed_ok && arith_polygon_dk_closed(p, cfg.d, cfg.k, m) == arith_dk_cumulative(p, cfg.d, cfg.k, m + 1);
  }
  const Comparison cmp = polygon_ge(dk, delta, n);

  Json polys;
  polys["hodge"] = polygon_json(hodge);
  polys["p_delta"] = polygon_json(delta);
  polys["p_dk"] = polygon_json(dk);
  polys["p_dk_over_p_minus_1"] = polygon_json(dk.scaled(Rational(1, p - 1)));
  out.report["polygons"] = polys;
  out.report["closed_forms_agree"] = closed_ok;
  out.report["p_dk_ge_p_delta"] = comparison_json(cmp);
  const bool ok = closed_ok && (cmp.holds || !cfg.p_gt_d2d1());
  out.report["verdict"] = ok ? "pass" : "fail";

  out.csv = "m,hodge,p_delta,p_dk\n";
  for (int m = 0; m <= n; ++m) {
    out.csv += std::to_string(m) + "," + hodge(m).str() + "," + delta(m).str() + "," + dk(m).str() + "\n";
  }
  out.plot = plot_block("hodge", hodge) + plot_block("p_delta", delta) + plot_block("p_dk", dk);
  out.exit_code = ok ? kOk : kVerdictFailed;
  return out;
}

Outcome cmd_cfunction(const RunConfig& cfg) {
  const PolyInput f = cfg.poly();
  const std::size_t mmax = cfg.m_max.value_or(4);
  const std::uint32_t N = cfg.N.value_or(6);
  const Polygon bound = dk_polygon(f.p, f.d, f.k, static_cast<int>(mmax)).scaled(f.b);
  const std::size_t M = cfg.M.value_or(static_cast<std::size_t>(bound(static_cast<int>(mmax)).convert_to<long long>()) + 5);

  const CFunction C = c_function(f, mmax, N, M, sum_options(cfg));
  const LFunction L = l_from_c(C, f.q(), N);
  const NewtonPoints pts = newton_points_T(C.series);
  const Polygon np = newton_polygon(pts);
  const auto ords = orders(C.series);
  const auto rows = bound_rows(ords, bound);
  const Polygon hodge = hodge_polygon(f.d, static_cast<int>(mmax)).scaled(Rational((f.p - 1) * f.b));
  const auto hrows = bound_rows(ords, hodge);

  Outcome out;
  out.report = header(cfg);
  out.report["polynomial"] = coeffs_json(f.coeffs);
  out.report["window"] = {{"N", str(N)}, {"M", str(static_cast<std::int64_t>(M))},
                          {"sum_precision", str(cfunction_guard(f.p, N, mmax))}};
  Json sanity = Json::array();
  bool sane = true;
  for (const auto& s : C.sums) {
    const std::uint64_t mod = s.series.modulus();
    const std::uint64_t expect = modarith::sub(modarith::pow(f.q() % mod, s.l, mod), 1 % mod, mod);
    sane = sane && s.series.residues()[0] == expect;
    sanity.push_back({{"l", str(s.l)}, {"S_at_T0", str(static_cast<std::int64_t>(s.series.residues()[0]))},
                      {"q^l-1", str(static_cast<std::int64_t>(expect))}, {"ok", s.series.residues()[0] == expect}});
  }
  out.report["sanity_T0"] = sanity;
  out.report["integral"] = true;
  out.report["l_dual_path"] = L.paths_agree;
  out.report["newton_points"] = points_json(pts);
  out.report["newton_polygon"] = polygon_json(np);
  out.report["bound_p_dk"] = polygon_json(bound);
  out.report["bound_hodge"] = polygon_json(hodge);
  out.report["dk_bound"] = rows_json(rows);
  out.report["hodge_bound"] = rows_json(hrows);

  const bool dk_fail = any_fail(rows);
  const bool fail = any_fail(hrows) || (dk_fail && cfg.p_gt_d2d1()) || !sane;
  if (dk_fail && !cfg.p_gt_d2d1()) out.report["note"] = "p <= d(2d+1): p_dk rows are informational";
  out.report["verdict"] = fail ? "fail" : "pass";

  out.csv = std::string(kRowsHeader) + rows_csv(rows, "dk_bound") + rows_csv(hrows, "hodge_bound");
  out.plot = plot_block("newton_polygon", np) + plot_block("bound_p_dk", bound) + plot_block("bound_hodge", hodge);
  out.exit_code = fail ? kVerdictFailed : kOk;
  return out;
}

Outcome cmd_dwork(const RunConfig& cfg) {
  const PolyInput f = cfg.poly();
  if (f.b != 1) {
    throw UnsupportedError("the Dwork matrix path needs q = p; run `tadic cfunction` for q = " +
                           std::to_string(f.q()));
  }
  const std::size_t mmax = cfg.m_max.value_or(4);
  const std::uint32_t N = cfg.N.value_or(5);
  const std::size_t P = cfg.P.value_or(40);
  const std::size_t tail = tail_rule(f.p, f.d, P);
  const std::size_t mt = cfg.m_trunc.value_or(tail);
  const std::uint32_t guarded = cfunction_guard(f.p, N, mmax);

  const DworkMatrix A = build_matrix(f, mt, P, guarded, {cfg.allow_small_truncation});
  const FredholmSeries Fg = fredholm(A, mmax);
  const FredholmSeries F = at_precision(Fg, N);
  const std::size_t oracle_m = std::min<std::size_t>(2, mmax);
  const FredholmSeries minors = at_precision(fredholm_minors(A, oracle_m), N);
  bool minors_ok = true;
  for (std::size_t m = 0; m <= oracle_m; ++m) minors_ok = minors_ok && F.c[m] == minors.c[m];

  const Polygon bound = dk_polygon(f.p, f.d, f.k, static_cast<int>(mmax));
  const Polygon hodge = hodge_polygon(f.d, static_cast<int>(mmax)).scaled(Rational(f.p - 1));
  const auto rows = theorem31_check(F, bound);
  const auto hrows = theorem31_check(F, hodge);

  Outcome out;
  out.report = header(cfg);
  out.report["polynomial"] = coeffs_json(f.coeffs);
  out.report["window"] = {{"N", str(N)}, {"P", str(static_cast<std::int64_t>(P))}, {"matrix_precision", str(guarded)}};
  out.report["matrix"] = {{"size", str(static_cast<std::int64_t>(mt))},
                          {"tail_rule", str(static_cast<std::int64_t>(tail))},
                          {"below_tail_rule", mt < tail}};
  out.report["gamma_audit"] = {{"checked", str(static_cast<std::int64_t>(A.audit.checked))},
                               {"violations", str(static_cast<std::int64_t>(A.audit.violations))},
                               {"min_slack", str(A.audit.min_slack)}};
  Json det = Json::array();
  for (std::size_t m = 0; m <= mmax; ++m) {
    Json c = Json::array();
    for (auto v : F.det_coefficient(m).residues()) c.push_back(str(static_cast<std::int64_t>(v)));
    det.push_back({{"m", str(static_cast<std::int64_t>(m))}, {"ord", to_string(F.c[m].order())}, {"pi_coefficients", c}});
  }
  out.report["det_1_minus_As"] = det;
  out.report["minor_oracle_agrees"] = minors_ok;
  out.report["dk_bound"] = rows_json(rows);
  out.report["hodge_bound"] = rows_json(hrows);

  bool fail = !minors_ok || any_fail(hrows) || (any_fail(rows) && cfg.p_gt_d2d1());
  if (mt >= tail) {
    const CFunction C = c_function(f, mmax, N, P, sum_options(cfg));
    const bool dual = dual_path_agrees(F, C.series, P);
    const bool stable = truncation_stable(f, mt, P, guarded, mmax, Fg);
    out.report["dual_path_agrees"] = dual;
    out.report["doubling_stable"] = stable;
    fail = fail || !dual || !stable;
  } else {
    out.report["dual_path_agrees"] = "skipped: below tail rule";
    out.report["doubling_stable"] = "skipped: below tail rule";
  }
  out.report["verdict"] = fail ? "fail" : "pass";

  out.csv = std::string(kRowsHeader) + rows_csv(rows, "dk_bound") + rows_csv(hrows, "hodge_bound");
  NewtonPoints pts;
  for (std::size_t m = 0; m <= mmax; ++m) {
    const Valuation v = F.c[m].order();
    pts.push_back({static_cast<int>(m), v.value, v.certified});
  }
  out.plot = plot_block("newton_polygon_pi", newton_polygon(pts)) + plot_block("bound_p_dk", bound) +
             plot_block("bound_hodge", hodge);
  out.exit_code = fail ? kVerdictFailed : kOk;
  return out;
}

Outcome cmd_explore(const RunConfig& cfg) {
  if (cfg.trials < 0) throw DomainError("--trials must be >= 0");
  RunConfig base = cfg;
  base.coeffs = std::nullopt;
  const PolyInput shape = base.poly();
  const std::uint64_t q = shape.q();
  const std::size_t mmax = cfg.m_max.value_or(3);
  const std::uint32_t N = cfg.N.value_or(6);
  const Polygon bound = dk_polygon(shape.p, shape.d, shape.k, static_cast<int>(mmax)).scaled(shape.b);
  const std::size_t M = cfg.M.value_or(static_cast<std::size_t>(bound(static_cast<int>(mmax)).convert_to<long long>()) + 5);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::uint64_t> unit(1, q - 1), any(0, q - 1);
  std::vector<PolyInput> samples;
  for (int t = 0; t < cfg.trials; ++t) {
    PolyInput f = shape;
    f.coeffs.clear();
    f.coeffs[shape.d] = unit(rng);
    f.coeffs[shape.k] = unit(rng);
    for (int i = 1; i < shape.k; ++i) f.coeffs[i] = any(rng);
    samples.push_back(std::move(f));
  }

  std::vector<NewtonPoints> results(samples.size());
  std::exception_ptr failure;
  const ExpSumOptions opts{Kernel::Serial, cfg.budget};
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(samples.size()); ++t) {
    try {
      results[t] = newton_points_T(c_function(samples[t], mmax, N, M, opts).series);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Outcome out;
  out.report = header(cfg);
  out.report["window"] = {{"N", str(N)}, {"M", str(static_cast<std::int64_t>(M))}};
  out.report["sampling"] = "a_d, a_k uniform on F_q^x; other a_i uniform on F_q; std::mt19937_64";
  out.report["bound_p_dk"] = polygon_json(bound);

  Json table = Json::array();
  out.csv = "m,bound,equal,trials,min_ord\n";
  std::size_t all_equal = 0;
  std::vector<Rational> minimum;
  if (!samples.empty()) {
    std::vector<Polygon> hulls;
    for (const auto& r : results) hulls.push_back(newton_polygon(r));
    for (std::size_t m = 0; m <= mmax; ++m) {
      std::size_t equal = 0;
      int min_ord = std::numeric_limits<int>::max();
      Rational min_hull = hulls[0](static_cast<int>(m));
      for (std::size_t t = 0; t < results.size(); ++t) {
        const auto& pt = results[t][m];
        if (pt.certified && Rational(pt.ord) == bound(static_cast<int>(m))) ++equal;
        min_ord = std::min(min_ord, pt.ord);
        min_hull = std::min(min_hull, hulls[t](static_cast<int>(m)));
      }
      minimum.push_back(min_hull);
      table.push_back({{"m", str(static_cast<std::int64_t>(m))},
                       {"bound", str(bound(static_cast<int>(m)))},
                       {"equal", str(static_cast<std::int64_t>(equal))},
                       {"fraction", str(Rational(static_cast<long long>(equal), static_cast<long long>(samples.size())))},
                       {"min_ord", str(min_ord)}});
      out.csv += std::to_string(m) + "," + bound(static_cast<int>(m)).str() + "," + std::to_string(equal) + "," +
                 std::to_string(samples.size()) + "," + std::to_string(min_ord) + "\n";
    }
    for (std::size_t t = 0; t < results.size(); ++t) {
      bool eq = true;
      for (std::size_t m = 0; m <= mmax; ++m) {
        eq = eq && results[t][m].certified && Rational(results[t][m].ord) == bound(static_cast<int>(m));
      }
      all_equal += eq ? 1 : 0;
    }
  }
  out.report["equality_table"] = table;
  out.report["equal_on_all_m"] = str(static_cast<std::int64_t>(all_equal));
  if (!minimum.empty()) out.report["pointwise_minimum_newton_polygon"] = polygon_json(Polygon(minimum));

  Json trials = Json::array();
  for (std::size_t t = 0; t < samples.size(); ++t) {
    trials.push_back({{"coeffs", coeffs_json(samples[t].coeffs)}, {"newton_points", points_json(results[t])}});
  }
  out.report["trials"] = trials;
  out.report["claim"] = "empirical frequencies only";
  out.plot = plot_block("bound_p_dk", bound);
  if (!minimum.empty()) out.plot += plot_block("pointwise_minimum", Polygon(minimum));
  return out;
}

Outcome cmd_specialize(const RunConfig& cfg) {
  if (cfg.m != 1) {
    throw UnsupportedError("only the pi_1 specialization (m = 1) is implemented; pi_m for m >= 2 is out of scope");
  }
  const PolyInput f = cfg.poly();
  const std::size_t mmax = cfg.m_max.value_or(static_cast<std::size_t>(f.d) + 2);
  const std::uint32_t N = cfg.N.value_or(3);
  const int top = static_cast<int>(std::max<std::size_t>(mmax, f.d));
  const Polygon bound = dk_polygon(f.p, f.d, f.k, top).scaled(f.b);
  const std::size_t need = static_cast<std::size_t>(f.p - 1) * N;
  const std::size_t M = cfg.M.value_or(
      std::max(need, static_cast<std::size_t>(bound(static_cast<int>(mmax)).convert_to<long long>()) + 5));

  const LFunction L = l_function(f, mmax, N, M, sum_options(cfg));
  const Specialization sp = specialize_pi1(L.series, N);
  const Polygon np = newton_polygon(sp.points);
  const int range = std::min<int>(f.d, static_cast<int>(mmax));
  const auto rows = bound_rows(std::vector<Valuation>(sp.ords.begin(), sp.ords.begin() + range + 1),
                               bound.truncated(range));

  // Degree shape: s^d certified nonzero, nothing certified above it.
  std::string degree = "skipped: m_max < d";
  if (mmax >= static_cast<std::size_t>(f.d)) {
    bool above = false;
    for (std::size_t m = f.d + 1; m <= mmax; ++m) above = above || sp.ords[m].certified;
    if (above) {
      degree = "fail";
    } else {
      degree = sp.ords[f.d].certified ? "pass" : "uncertified";
    }
  }

  const TSeries one_plus_T_p = binomial_series(
      PadicInt(f.p, N + static_cast<std::uint32_t>(modarith::factorial_valuation(need - 1, f.p)), f.p), need, N);
  const bool smoke =
      specialize_pi1(BiSeries({one_plus_T_p}), N).coeffs[0] == CyclotomicElement::one(f.p, N);

  Outcome out;
  out.report = header(cfg);
  out.report["polynomial"] = coeffs_json(f.coeffs);
  out.report["window"] = {{"N", str(N)}, {"M", str(static_cast<std::int64_t>(M))}, {"pi1_cap", str(sp.cap)}};
  out.report["l_dual_path"] = L.paths_agree;
  out.report["pi1_points"] = points_json(sp.points);
  out.report["pi1_newton_polygon"] = polygon_json(np);
  out.report["bound_p_dk"] = polygon_json(bound.truncated(range));
  out.report["dk_bound"] = rows_json(rows);
  out.report["degree_check"] = degree;
  out.report["one_plus_T_to_p_is_1"] = smoke;
  const bool fail = (any_fail(rows) && cfg.p_gt_d2d1()) || degree == "fail" || !smoke;
  out.report["verdict"] = fail ? "fail" : "pass";

  out.csv = std::string(kRowsHeader) + rows_csv(rows, "dk_bound");
  out.plot = plot_block("pi1_newton_polygon", np) + plot_block("bound_p_dk", bound.truncated(range));
  out.exit_code = fail ? kVerdictFailed : kOk;
  return out;
}

Outcome dispatch(const RunConfig& cfg) {
  if (cfg.command == "polygons") return cmd_polygons(cfg);
  if (cfg.command == "cfunction") return cmd_cfunction(cfg);
  if (cfg.command == "dwork") return cmd_dwork(cfg);
  if (cfg.command == "explore") return cmd_explore(cfg);
  if (cfg.command == "specialize") return cmd_specialize(cfg);
  throw DomainError("unknown command '" + cfg.command + "'");
}

std::string render(const Outcome& out, Format format) {
  switch (format) {
    case Format::Json: return out.report.dump(2) + "\n";
    case Format::Csv: return out.csv;
    case Format::Plot: return out.plot;
  }
  return {};
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Exact T-adic exponential sums, Dwork determinants and Newton polygon bounds"};
  app.require_subcommand(1);

  struct Raw {
    std::uint32_t p = 11;
    std::uint64_t q = 0;
    int d = 2, k = 1;
    std::string coeffs, input, config;
    std::uint64_t seed = 1;
    int trials = 0;
    std::uint32_t N = 0;
    std::size_t M = 0, P = 0, mmax = 0, mtrunc = 0;
    int m = 1;
    bool allow_small = false;
    std::uint64_t budget = 10'000'000;
    std::string kernel = "parallel";
    bool sweep = false;
    std::uint32_t p_min = 5, p_max = 199;
    int d_min = 2, d_max = 6, m_factor = 3;
    std::string out, format = "json";
    bool timings = false;
  } raw;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"polygons", "Hodge and arithmetic polygons, closed forms, pointwise comparison (or --sweep)"},
      {"cfunction", "C_f by character sums, T-adic Newton points against the polygon bounds"},
      {"dwork", "Dwork matrix, det(1 - As), valuation audit, agreement with the character-sum path"},
      {"explore", "random f: how often the Newton polygon meets p_{d,[0,k]}"},
      {"specialize", "L_f(s, pi_1): pi_1-adic Newton points and degree shape"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--p", raw.p, "prime p");
    s->add_option("--q", raw.q, "field size q = p^b (default p)");
    s->add_option("--d", raw.d, "degree d");
    s->add_option("--k", raw.k, "second exponent k < d");
    s->add_option("--coeffs", raw.coeffs, "coefficients as exponent:code pairs, e.g. 2:1,1:1");
    s->add_option("--input", raw.input, "polynomial JSON file {p, q, d, k, coeffs}");
    s->add_option("--config", raw.config, "JSON file of option values; explicit flags win");
    s->add_option("--seed", raw.seed, "sampling seed");
    s->add_option("--trials", raw.trials, "number of random f");
    s->add_option("--N", raw.N, "p-adic precision");
    s->add_option("--M", raw.M, "T-adic truncation");
    s->add_option("--P", raw.P, "pi-adic truncation");
    s->add_option("--mmax", raw.mmax, "largest s-degree");
    s->add_option("--mtrunc", raw.mtrunc, "Dwork matrix size");
    s->add_option("--m", raw.m, "pi_m level (specialize)");
    s->add_flag("--allow-small-truncation", raw.allow_small, "accept a Dwork matrix below the tail rule");
    s->add_option("--budget", raw.budget, "enumeration budget (elements of F_{q^l}^x)");
    s->add_option("--kernel", raw.kernel, "parallel, serial or reference");
    s->add_flag("--sweep", raw.sweep, "polygons: sweep ranges and list violations");
    s->add_option("--p-min", raw.p_min, "sweep: smallest prime");
    s->add_option("--p-max", raw.p_max, "sweep: largest prime");
    s->add_option("--d-min", raw.d_min, "sweep: smallest d");
    s->add_option("--d-max", raw.d_max, "sweep: largest d");
    s->add_option("--m-factor", raw.m_factor, "sweep: m <= factor * d");
    s->add_option("--out", raw.out, "output file (default stdout)");
    s->add_option("--format", raw.format, "json, csv or plot");
    s->add_flag("--timings", raw.timings, "add wall-clock timings to the report");
    subs[name] = s;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    CLI::App* sub = nullptr;
    for (const auto& [name, s] : subs) {
      if (s->parsed()) {
        cfg.command = name;
        sub = s;
      }
    }
    auto given = [&](const char* flag) { return sub->get_option(flag)->count() > 0; };

    if (given("--config")) {
      std::ifstream in(raw.config);
      if (!in) throw DomainError("cannot read config " + raw.config);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw DomainError("config " + raw.config + " is not valid JSON: " + e.what());
      }
      const std::string command = cfg.command;
      apply_json(cfg, j);
      cfg.command = command;
    }
    if (given("--input")) {
      std::ifstream in(raw.input);
      if (!in) throw DomainError("cannot read polynomial " + raw.input);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw DomainError("polynomial " + raw.input + " is not valid JSON: " + e.what());
      }
      const PolyInput f = PolyInput::from_json(j);
      cfg.p = f.p;
      cfg.q = f.q();
      cfg.d = f.d;
      cfg.k = f.k;
      cfg.coeffs = f.coeffs;
    }
    if (given("--p")) cfg.p = raw.p;
    if (given("--q")) cfg.q = raw.q;
    if (given("--d")) cfg.d = raw.d;
    if (given("--k")) cfg.k = raw.k;
    if (given("--coeffs")) cfg.coeffs = parse_coeffs(raw.coeffs);
    if (given("--seed")) cfg.seed = raw.seed;
    if (given("--trials")) cfg.trials = raw.trials;
    if (given("--N")) cfg.N = raw.N;
    if (given("--M")) cfg.M = raw.M;
    if (given("--P")) cfg.P = raw.P;
    if (given("--mmax")) cfg.m_max = raw.mmax;
    if (given("--mtrunc")) cfg.m_trunc = raw.mtrunc;
    if (given("--m")) cfg.m = raw.m;
    if (raw.allow_small) cfg.allow_small_truncation = true;
    if (given("--budget")) cfg.budget = raw.budget;
    if (given("--kernel")) cfg.kernel = parse_kernel(raw.kernel);
    if (raw.sweep) cfg.sweep = true;
    if (given("--p-min")) cfg.p_min = raw.p_min;
    if (given("--p-max")) cfg.p_max = raw.p_max;
    if (given("--d-min")) cfg.d_min = raw.d_min;
    if (given("--d-max")) cfg.d_max = raw.d_max;
    if (given("--m-factor")) cfg.m_factor = raw.m_factor;
    if (given("--out")) cfg.out = raw.out;
    if (given("--format")) cfg.format = parse_format(raw.format);
    if (raw.timings) cfg.timings = true;

    if (!modarith::is_prime(cfg.p)) throw DomainError("--p " + std::to_string(cfg.p) + " is not prime");
    if (cfg.N && *cfg.N == 0) throw DomainError("--N must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    Outcome out = dispatch(cfg);
    if (cfg.timings) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
      out.report["timings"] = {{"total_ms", std::to_string(ms.count())}};
    }
    const std::string text = render(out, cfg.format);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(cfg.out);
      if (!file) throw DomainError("cannot write " + cfg.out);
      file << text;
    }
    return out.exit_code;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << " (try a larger --N or --M)\n";
    return kResource;
  } catch (const ResourceError& e) {
    std::cerr << "resource: " << e.what() << "\n";
    return kResource;
  } catch (const InternalError& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kVerdictFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerdictFailed;
  }
}

}  // namespace tadic::cli
