#include "tadic/dwork.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace tadic {

namespace {

struct HatTerm {
  int exponent;
  std::uint64_t hat;  // Teichmüller lift of a_j mod p^N
};

std::vector<HatTerm> hat_terms(const PolyInput& f, std::uint32_t N) {
  f.validate();
  if (f.b != 1) {
    throw UnsupportedError("the Dwork matrix path needs q = p; use the character-sum path (cfunction) for q = " +
                           std::to_string(f.q()));
  }
  std::vector<HatTerm> out;
  for (const auto& [e, code] : f.coeffs) {
    if (code == 0) continue;
    out.push_back({e, teichmuller(PadicInt(f.p, N, static_cast<std::int64_t>(code))).residue()});
  }
  return out;
}

using Flat = std::vector<std::uint64_t>;  // n x n x P, row-major

Flat flatten(const DworkMatrix& A) {
  const std::size_t n = A.size, P = A.pi_length;
  Flat out(n * n * P, 0);
  for (std::size_t e = 0; e < n * n; ++e) {
    auto r = A.entries[e].residues();
    std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(e * P));
  }
  return out;
}

Flat matmul(const Flat& a, const Flat& b, std::size_t n, std::size_t P, std::uint64_t m) {
  Flat out(n * n * P, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t si = 0; si < static_cast<std::int64_t>(n); ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t l = 0; l < n; ++l) {
      const std::uint64_t* x = &a[(i * n + l) * P];
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t* y = &b[(l * n + j) * P];
        std::uint64_t* z = &out[(i * n + j) * P];
        for (std::size_t u = 0; u < P; ++u) {
          if (x[u] == 0) continue;
          for (std::size_t v = 0; u + v < P; ++v) {
            if (y[v] != 0) z[u + v] = modarith::add(z[u + v], modarith::mul(x[u], y[v], m), m);
          }
        }
      }
    }
  }
  return out;
}

TSeries trace_of(const Flat& a, std::size_t n, std::size_t P, std::uint32_t p, std::uint32_t N) {
  const std::uint64_t m = modarith::prime_power(p, N);
  std::vector<std::uint64_t> t(P, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t u = 0; u < P; ++u) t[u] = modarith::add(t[u], a[(i * n + i) * P + u], m);
  }
  return TSeries(Variable::Pi, p, N, std::move(t));
}

}  // namespace

std::vector<TSeries> ef_coefficients(const PolyInput& f, std::size_t count, std::size_t P, std::uint32_t N) {
  const auto terms = hat_terms(f, N);
  const std::uint64_t m = modarith::prime_power(f.p, N);
  const TSeries lambda = artin_hasse(f.p, P, N);

  std::vector<std::vector<std::uint64_t>> cur(count, std::vector<std::uint64_t>(P, 0));
  if (count > 0) cur[0][0] = 1 % m;
  for (const auto& term : terms) {
    const auto j = static_cast<std::size_t>(term.exponent);
    // E(pi a x^j) = sum_n lambda_n a^n pi^n x^(jn)
    std::vector<std::uint64_t> fac;
    std::uint64_t power = 1 % m;
    for (std::size_t n = 0; n < P && j * n < count; ++n) {
      fac.push_back(modarith::mul(lambda.residues()[n], power, m));
      power = modarith::mul(power, term.hat, m);
    }
    std::vector<std::vector<std::uint64_t>> next(count, std::vector<std::uint64_t>(P, 0));
    for (std::size_t x = 0; x < count; ++x) {
      const auto& src = cur[x];
      if (std::all_of(src.begin(), src.end(), [](std::uint64_t v) { return v == 0; })) continue;
      for (std::size_t n = 0; n < fac.size() && x + j * n < count; ++n) {
        if (fac[n] == 0) continue;
        auto& dst = next[x + j * n];
        for (std::size_t t = 0; t + n < P; ++t) {
          if (src[t] != 0) dst[t + n] = modarith::add(dst[t + n], modarith::mul(fac[n], src[t], m), m);
        }
      }
    }
    cur.swap(next);
  }

  std::vector<TSeries> out;
  out.reserve(count);
  for (auto& c : cur) out.emplace_back(Variable::Pi, f.p, N, std::move(c));
  return out;
}

TSeries ef_coefficient_explicit(const PolyInput& f, std::size_t i, std::size_t P, std::uint32_t N) {
  const auto terms = hat_terms(f, N);
  const std::uint64_t m = modarith::prime_power(f.p, N);
  const auto lambda = artin_hasse(f.p, std::max<std::size_t>(P, i + 1), N);
  std::vector<std::uint64_t> out(P, 0);

  // Choose n_j for each term in turn; `weight` is sum j n_j so far.
  std::function<void(std::size_t, std::size_t, std::size_t, std::uint64_t)> walk =
      [&](std::size_t idx, std::size_t weight, std::size_t total, std::uint64_t coeff) {
        if (idx == terms.size()) {
          if (weight == i && total < P) out[total] = modarith::add(out[total], coeff, m);
          return;
        }
        const auto j = static_cast<std::size_t>(terms[idx].exponent);
        std::uint64_t power = 1 % m;
        for (std::size_t n = 0; weight + j * n <= i; ++n) {
          const std::uint64_t c = modarith::mul(coeff, modarith::mul(lambda.residues()[n], power, m), m);
          walk(idx + 1, weight + j * n, total + n, c);
          power = modarith::mul(power, terms[idx].hat, m);
        }
      };
  walk(0, 0, 0, 1 % m);
  return TSeries(Variable::Pi, f.p, N, std::move(out));
}

int gamma_bound(std::int64_t i, int d, int k) {
  if (i < 0) throw DomainError("gamma_bound needs i >= 0");
  const std::int64_t r = i % d;
  return static_cast<int>(i / d + (r + k - 1) / k);
}

std::size_t tail_rule(std::uint32_t p, int d, std::size_t P) {
  const std::size_t num = static_cast<std::size_t>(d) * P + static_cast<std::size_t>(d);
  return (num + p - 2) / (p - 1) + 2;
}

DworkMatrix build_matrix(const PolyInput& f, std::size_t m_trunc, std::size_t P, std::uint32_t N,
                         const DworkOptions& opts) {
  hat_terms(f, N);
  if (m_trunc < 1 || P < 1) throw DomainError("need M_trunc >= 1 and P >= 1");
  const std::size_t need = tail_rule(f.p, f.d, P);
  if (m_trunc < need && !opts.allow_small_truncation) {
    throw DomainError("M_trunc = " + std::to_string(m_trunc) + " is below the tail rule ceil((dP+d)/(p-1)) + 2 = " +
                      std::to_string(need) + " for P = " + std::to_string(P));
  }

  DworkMatrix A;
  A.p = f.p;
  A.d = f.d;
  A.k = f.k;
  A.size = m_trunc;
  A.pi_length = P;
  A.precision = N;
  A.gammas = ef_coefficients(f, f.p * (m_trunc - 1) + 1, P, N);

  for (std::size_t i = 0; i < std::min<std::size_t>(2 * f.d, A.gammas.size()); ++i) {
    if (!(ef_coefficient_explicit(f, i, P, N) == A.gammas[i])) {
      throw InternalError("gamma_" + std::to_string(i) + " differs between the product and the explicit sum");
    }
  }

  const TSeries zero = TSeries::zero(Variable::Pi, f.p, N, P);
  A.entries.assign(m_trunc * m_trunc, zero);
  std::size_t violations = 0, checked = 0;
  int min_slack = std::numeric_limits<int>::max();
#pragma omp parallel for reduction(+ : violations, checked) reduction(min : min_slack) schedule(static)
  for (std::int64_t si = 0; si < static_cast<std::int64_t>(m_trunc); ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t j = 0; j < m_trunc; ++j) {
      if (f.p * i < j) continue;
      const std::size_t idx = f.p * i - j;
      A.entries[i * m_trunc + j] = A.gammas[idx];
      const Valuation v = A.gammas[idx].order();
      const int bound = gamma_bound(static_cast<std::int64_t>(idx), f.d, f.k);
      ++checked;
      if (v.certified) {
        if (v.value < bound) ++violations;
        min_slack = std::min(min_slack, v.value - bound);
      }
    }
  }
  A.audit = {checked, violations, min_slack == std::numeric_limits<int>::max() ? 0 : min_slack};
  if (violations > 0) {
    throw InternalError(std::to_string(violations) + " Dwork matrix entries violate ord(gamma_i) >= [i/d] + ceil(r_i/k)");
  }
  return A;
}

TSeries FredholmSeries::det_coefficient(std::size_t m) const { return m % 2 == 0 ? c[m] : -c[m]; }

FredholmSeries fredholm(const DworkMatrix& A, std::size_t m_max) {
  if (m_max < 1) throw DomainError("m_max must be at least 1");
  const std::size_t n = A.size, P = A.pi_length;
  const std::uint64_t mod = modarith::prime_power(A.p, A.precision);
  const Flat a = flatten(A);
  std::vector<TSeries> w;
  w.push_back(TSeries::zero(Variable::Pi, A.p, A.precision, P));
  Flat power = a;
  for (std::size_t l = 1; l <= m_max; ++l) {
    if (l > 1) power = matmul(power, a, n, P, mod);
    w.push_back(-trace_of(power, n, P, A.p, A.precision));
  }
  const BiSeries det = exp_from_weighted_terms(w, m_max);
  FredholmSeries F;
  for (std::size_t m = 0; m <= m_max; ++m) F.c.push_back(m % 2 == 0 ? det[m] : -det[m]);
  return F;
}

FredholmSeries fredholm_minors(const DworkMatrix& A, std::size_t m_max) {
  const std::size_t n = A.size, P = A.pi_length;
  FredholmSeries F;
  F.c.push_back(TSeries::one(Variable::Pi, A.p, A.precision, P));
  for (std::size_t m = 1; m <= m_max; ++m) {
    double work = 1;
    for (std::size_t t = 0; t < m && t < n; ++t) work *= static_cast<double>(n - t);
    if (work > 5e6) throw ResourceError("principal-minor oracle too large at m = " + std::to_string(m));
    TSeries total = TSeries::zero(Variable::Pi, A.p, A.precision, P);
    if (m > n) {
      F.c.push_back(total);
      continue;
    }
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
    do {
      std::vector<std::size_t> S;
      for (std::size_t i = 0; i < n; ++i) {
        if (pick[i]) S.push_back(i);
      }
      std::vector<std::size_t> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        int inversions = 0;
        for (std::size_t x = 0; x < m; ++x) {
          for (std::size_t y = x + 1; y < m; ++y) inversions += perm[x] > perm[y] ? 1 : 0;
        }
        TSeries term = A.at(S[0], S[perm[0]]);
        for (std::size_t x = 1; x < m && !term.is_zero(); ++x) term *= A.at(S[x], S[perm[x]]);
        if (inversions % 2 == 0) {
          total += term;
        } else {
          total -= term;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    F.c.push_back(total);
  }
  return F;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Uncertified: return "uncertified";
  }
  return "?";
}

std::vector<BoundRow> bound_rows(const std::vector<Valuation>& ords, const Polygon& polygon) {
  std::vector<BoundRow> rows;
  const std::size_t top = std::min(ords.size(), static_cast<std::size_t>(polygon.length()) + 1);
  for (std::size_t m = 0; m < top; ++m) {
    BoundRow r;
    r.m = static_cast<int>(m);
    r.ord = ords[m];
    r.bound = polygon(static_cast<int>(m));
    const bool meets = Rational(r.ord.value) >= r.bound;
    if (r.ord.certified) {
      r.verdict = meets ? Verdict::Pass : Verdict::Fail;
    } else {
      r.verdict = meets ? Verdict::Pass : Verdict::Uncertified;
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<BoundRow> theorem31_check(const FredholmSeries& F, const Polygon& polygon) {
  std::vector<Valuation> ords;
  for (const auto& c : F.c) ords.push_back(c.order());
  return bound_rows(ords, polygon);
}

bool dual_path_agrees(const FredholmSeries& F, const BiSeries& c_function_T, std::size_t P) {
  const std::size_t top = std::min(F.max_degree(), c_function_T.max_degree());
  for (std::size_t m = 0; m <= top; ++m) {
    if (!(F.det_coefficient(m) == compose_T_into_pi(c_function_T[m], P))) return false;
  }
  return true;
}

bool truncation_stable(const PolyInput& f, std::size_t m_trunc, std::size_t P, std::uint32_t N, std::size_t m_max,
                       const FredholmSeries& reference) {
  const FredholmSeries doubled = fredholm(build_matrix(f, 2 * m_trunc, P, N), m_max);
  for (std::size_t m = 0; m <= std::min(m_max, reference.max_degree()); ++m) {
    if (!(doubled.c[m] == reference.c[m])) return false;
  }
  return true;
}

}  // namespace tadic
