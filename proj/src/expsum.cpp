#include "tadic/expsum.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tadic {

// ---------------------------------------------------------------------------
// PolyInput

std::uint64_t PolyInput::q() const { return modarith::prime_power(p, b); }

void PolyInput::validate() const {
  if (!modarith::is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (b < 1) throw DomainError("q must be a positive power of p");
  const std::uint64_t qq = q();
  if (k < 1 || k >= d) {
    throw DomainError("need 1 <= k < d, got d=" + std::to_string(d) + ", k=" + std::to_string(k));
  }
  for (const auto& [e, code] : coeffs) {
    if (!((e >= 1 && e <= k) || e == d)) {
      throw DomainError("exponent " + std::to_string(e) + " is outside {1.." + std::to_string(k) + "} u {" +
                        std::to_string(d) + "}");
    }
    if (code >= qq) throw DomainError("coefficient code " + std::to_string(code) + " is not below q");
  }
  auto nonzero = [&](int e) {
    auto it = coeffs.find(e);
    return it != coeffs.end() && it->second != 0;
  };
  if (!nonzero(d) || !nonzero(k)) throw DomainError("need a_d a_k != 0");
}

PolyInput PolyInput::from_json(const nlohmann::json& j) {
  PolyInput f;
  try {
    f.p = j.at("p").get<std::uint32_t>();
    f.d = j.at("d").get<int>();
    f.k = j.at("k").get<int>();
    if (j.contains("q")) {
      const auto qq = j.at("q").get<std::uint64_t>();
      std::uint64_t pw = f.p;
      f.b = 1;
      while (pw < qq && f.p > 1) {
        pw *= f.p;
        ++f.b;
      }
      if (pw != qq) throw DomainError("q = " + std::to_string(qq) + " is not a power of p");
    }
    const auto& c = j.at("coeffs");
    if (c.is_object()) {
      for (auto it = c.begin(); it != c.end(); ++it) f.coeffs[std::stoi(it.key())] = it.value().get<std::uint64_t>();
    } else {
      for (const auto& pair : c) f.coeffs[pair.at(0).get<int>()] = pair.at(1).get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed polynomial JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    throw DomainError(std::string("malformed polynomial JSON: ") + e.what());
  }
  f.validate();
  return f;
}

nlohmann::json PolyInput::to_json() const {
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [e, code] : coeffs) c[std::to_string(e)] = code;
  return {{"p", p}, {"q", q()}, {"d", d}, {"k", k}, {"coeffs", c}};
}

// ---------------------------------------------------------------------------
// Character sums

namespace {

struct Term {
  int exponent;
  std::vector<std::uint64_t> hat;  // Teichmüller lift of a_j, working precision
};

struct SumContext {
  RingPtr ring;
  std::uint32_t n;
  std::uint64_t wmod;
  std::uint64_t count;  // q^l - 1
  std::vector<Term> terms;
  std::vector<std::uint64_t> omega;  // Teichmüller generator
  const BinomialExpander* expander;
};

std::uint64_t element_count(std::uint64_t q, int l) {
  unsigned __int128 v = 1;
  for (int i = 0; i < l; ++i) {
    v *= q;
    if (v > modarith::kMaxModulus) throw ResourceError("q^l exceeds 2^62");
  }
  return static_cast<std::uint64_t>(v) - 1;
}

ZqElement embed_coefficient(const RingPtr& ring, const PolyInput& f, std::uint64_t code,
                            const ZqElement* theta) {
  if (f.b == 1) return ZqElement::scalar(ring, PadicInt(f.p, 1, static_cast<std::int64_t>(code)));
  ZqElement acc = ZqElement::zero(ring, 1);
  ZqElement power = ZqElement::one(ring, 1);
  for (std::uint32_t i = 0; i < f.b; ++i) {
    acc += power * ZqElement::scalar(ring, PadicInt(f.p, 1, static_cast<std::int64_t>(code % f.p)));
    code /= f.p;
    power *= *theta;
  }
  return acc;
}

// Trace values of f^(omega^e) for e in [begin, end), folded through the binomial expander.
void enumerate_block(const SumContext& ctx, std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& acc) {
  const auto& R = *ctx.ring;
  const std::size_t t = ctx.terms.size();
  std::vector<std::vector<std::uint64_t>> y(t), step(t);
  std::vector<std::uint64_t> tmp(ctx.n), s(ctx.n);
  for (std::size_t i = 0; i < t; ++i) {
    const auto j = static_cast<std::uint64_t>(ctx.terms[i].exponent);
    step[i] = R.pow(ctx.omega, j, ctx.wmod);
    const auto start = static_cast<std::uint64_t>((static_cast<unsigned __int128>(begin) * j) % ctx.count);
    auto w = R.pow(ctx.omega, start, ctx.wmod);
    y[i].assign(ctx.n, 0);
    R.mul(ctx.terms[i].hat, w, y[i], ctx.wmod);
  }

  constexpr std::size_t kBuffer = 4096;
  std::vector<std::uint64_t> traces;
  traces.reserve(kBuffer);
  auto flush = [&] {
    std::sort(traces.begin(), traces.end());
    for (std::size_t i = 0; i < traces.size();) {
      std::size_t j = i;
      while (j < traces.size() && traces[j] == traces[i]) ++j;
      ctx.expander->accumulate(traces[i], j - i, acc);
      i = j;
    }
    traces.clear();
  };

  for (std::uint64_t e = begin; e < end; ++e) {
    std::fill(s.begin(), s.end(), 0);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::uint32_t c = 0; c < ctx.n; ++c) s[c] = modarith::add(s[c], y[i][c], ctx.wmod);
      R.mul(y[i], step[i], tmp, ctx.wmod);
      y[i].swap(tmp);
    }
    traces.push_back(R.trace_linear(s, ctx.wmod));
    if (traces.size() == kBuffer) flush();
  }
  flush();
}

void add_into(std::vector<std::uint64_t>& acc, const std::vector<std::uint64_t>& part, std::uint64_t m) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = modarith::add(acc[i], part[i], m);
}

}  // namespace

SumResult exp_sum(const PolyInput& f, int l, std::uint32_t N, std::size_t M, const ExpSumOptions& opts) {
  f.validate();
  if (l < 1) throw DomainError("l must be positive");
  if (N < 1 || M < 1) throw DomainError("need N >= 1 and M >= 1");
  const std::uint64_t count = element_count(f.q(), l);
  if (count > opts.budget) {
    throw ResourceError("enumerating F_{q^" + std::to_string(l) + "}^x needs " + std::to_string(count) +
                        " elements, budget is " + std::to_string(opts.budget) + "; raise --budget or lower m_max");
  }
  const auto W = N + binomial_guard(f.p, M);
  const std::uint32_t n = f.b * static_cast<std::uint32_t>(l);
  RingPtr ring = UnramifiedRing::create(f.p, n, W);
  BinomialExpander ex(f.p, W, N, M);

  std::optional<ZqElement> theta;
  if (f.b > 1) theta = subfield_root(ring, smallest_irreducible(f.p, f.b));
  std::vector<std::pair<int, ZqElement>> hats;
  for (const auto& [e, code] : f.coeffs) {
    if (code == 0) continue;
    hats.emplace_back(e, teichmuller(embed_coefficient(ring, f, code, theta ? &*theta : nullptr), W));
  }

  std::vector<std::uint64_t> acc(M, 0);
  const std::uint64_t tmod = ex.target_modulus();

  if (opts.kernel == Kernel::Reference) {
    const std::uint64_t size = ring->residue_field_size();
    for (std::uint64_t code = 1; code < size; ++code) {
      const ZqElement x = teichmuller(ZqElement::from_code(ring, code, 1), W);
      ZqElement fx = ZqElement::zero(ring, W);
      for (const auto& [e, a] : hats) fx += a * x.pow(static_cast<std::uint64_t>(e));
      const TSeries term = binomial_series(trace(fx), M, N);
      add_into(acc, std::vector<std::uint64_t>(term.residues().begin(), term.residues().end()), tmod);
    }
  } else {
    SumContext ctx{ring, n, modarith::prime_power(f.p, W), count, {}, {}, &ex};
    for (const auto& [e, a] : hats) {
      ctx.terms.push_back({e, std::vector<std::uint64_t>(a.residues().begin(), a.residues().end())});
    }
    const ZqElement omega = teichmuller(multiplicative_generator(ring), W);
    ctx.omega.assign(omega.residues().begin(), omega.residues().end());

    if (opts.kernel == Kernel::Serial) {
      enumerate_block(ctx, 0, count, acc);
    } else {
      const std::uint64_t block = std::max<std::uint64_t>(1024, count / 256 + 1);
      const auto blocks = static_cast<std::int64_t>((count + block - 1) / block);
      std::exception_ptr failure;
#pragma omp parallel
      {
        std::vector<std::uint64_t> local(M, 0);
#pragma omp for schedule(dynamic)
        for (std::int64_t bi = 0; bi < blocks; ++bi) {
          const std::uint64_t begin = static_cast<std::uint64_t>(bi) * block;
          try {
            enumerate_block(ctx, begin, std::min(count, begin + block), local);
          } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
          }
        }
#pragma omp critical
        add_into(acc, local, tmod);
      }
      if (failure) std::rethrow_exception(failure);
    }
  }

  if (acc[0] != count % tmod) {
    throw InternalError("S_f(" + std::to_string(l) + ", 0) differs from q^l - 1");
  }
  SumMeta meta{N, W, M, count, opts.kernel};
  return {l, TSeries(Variable::T, f.p, N, std::move(acc)), meta};
}

// ---------------------------------------------------------------------------
// C and L

std::uint32_t cfunction_guard(std::uint32_t p, std::uint32_t N, std::size_t m_max) {
  return N + static_cast<std::uint32_t>(modarith::factorial_valuation(m_max, p));
}

namespace {

BiSeries at_precision(const BiSeries& s, std::uint32_t N) {
  return s.map([N](const TSeries& c) { return c.with_precision(N); });
}

PadicInt q_power_minus_one(std::uint32_t p, std::uint32_t prec, std::uint64_t q, std::size_t l) {
  const std::uint64_t m = modarith::prime_power(p, prec);
  return PadicInt::from_residue(p, prec, modarith::sub(modarith::pow(q % m, l, m), 1 % m, m));
}

}  // namespace

BiSeries c_from_sums(const std::vector<SumResult>& sums, std::uint64_t q, std::size_t m_max) {
  if (sums.size() < m_max) throw DomainError("need S_f(l) for l = 1..m_max");
  std::vector<TSeries> w;
  w.reserve(m_max + 1);
  w.push_back(sums[0].series);
  for (std::size_t l = 1; l <= m_max; ++l) {
    const TSeries& S = sums[l - 1].series;
    if (sums[l - 1].l != static_cast<int>(l)) throw DomainError("sums must be ordered l = 1, 2, ...");
    const PadicInt u = q_power_minus_one(S.prime(), S.precision(), q, l).inverse();
    w.push_back(-S.scaled(u));
  }
  return exp_from_weighted_terms(w, m_max);
}

CFunction c_function(const PolyInput& f, std::size_t m_max, std::uint32_t N, std::size_t M,
                     const ExpSumOptions& opts) {
  if (m_max < 1) throw DomainError("m_max must be at least 1");
  const std::uint32_t guarded = cfunction_guard(f.p, N, m_max);
  std::vector<SumResult> sums;
  for (std::size_t l = 1; l <= m_max; ++l) sums.push_back(exp_sum(f, static_cast<int>(l), guarded, M, opts));
  BiSeries C = at_precision(c_from_sums(sums, f.q(), m_max), N);
  return {std::move(C), std::move(sums)};
}

LFunction l_from_c(CFunction c, std::uint64_t q, std::uint32_t N) {
  const std::size_t m_max = c.series.max_degree();
  const std::uint32_t p = c.series[0].prime();
  std::vector<TSeries> w;
  w.push_back(c.sums[0].series);
  for (std::size_t l = 1; l <= m_max; ++l) w.push_back(c.sums[l - 1].series);
  BiSeries direct = at_precision(exp_from_weighted_terms(w, m_max), N);
  const PadicInt qq = PadicInt::from_residue(p, N, q % modarith::prime_power(p, N));
  BiSeries quotient = c.series * c.series.scale_s(qq).inverse();
  const bool agree = quotient == direct;
  if (!agree) throw InternalError("L_f from C(s)/C(qs) disagrees with the direct exponential formula");
  return {std::move(quotient), std::move(direct), std::move(c), agree};
}

LFunction l_function(const PolyInput& f, std::size_t m_max, std::uint32_t N, std::size_t M,
                     const ExpSumOptions& opts) {
  return l_from_c(c_function(f, m_max, N, M, opts), f.q(), N);
}

NewtonPoints newton_points_T(const BiSeries& series) {
  NewtonPoints pts;
  for (std::size_t m = 0; m < series.s_order(); ++m) {
    const Valuation v = series[m].order();
    pts.push_back({static_cast<int>(m), v.value, v.certified});
  }
  return pts;
}

Specialization specialize_pi1(const BiSeries& series, std::uint32_t N) {
  const std::uint32_t p = series[0].prime();
  const std::size_t need = static_cast<std::size_t>(p - 1) * N;
  Specialization out;
  out.cap = static_cast<int>(need);
  for (std::size_t m = 0; m < series.s_order(); ++m) {
    const TSeries& c = series[m];
    if (c.length() < need) {
      throw PrecisionError("pi1-precision " + std::to_string(N) + " needs T-truncation M >= (p-1) N = " +
                           std::to_string(need) + ", got " + std::to_string(c.length()));
    }
    if (c.precision() < N) {
      throw PrecisionError("s^" + std::to_string(m) + " coefficient is only known mod p^" +
                           std::to_string(c.precision()));
    }
    auto e = CyclotomicElement::from_polynomial(p, N, c.residues());
    const Valuation v = e.valuation();
    out.coeffs.push_back(std::move(e));
    out.ords.push_back(v);
    out.points.push_back({static_cast<int>(m), v.value, v.certified});
  }
  return out;
}

}  // namespace tadic
