#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tadic/cyclotomic.hpp"
#include "tadic/polygons.hpp"
#include "tadic/series.hpp"
#include "tadic/zq.hpp"

namespace tadic {

/// f(x) = a_d x^d + sum_{i<=k} a_i x^i over F_q, q = p^b. Coefficients of F_q
/// are integer codes whose base-p digits are coordinates over the basis
/// 1, y, ..., y^(b-1) of F_p[y]/(g), g = smallest_irreducible(p, b).
struct PolyInput {
  std::uint32_t p = 0;
  std::uint32_t b = 1;
  int d = 0;
  int k = 0;
  std::map<int, std::uint64_t> coeffs;

  std::uint64_t q() const;
  /// Throws DomainError unless p is prime, 1 <= k < d, a_d a_k != 0, and all
  /// exponents lie in {1..k} u {d} with codes below q.
  void validate() const;
  bool coprime() const { return d % static_cast<int>(p) != 0; }

  /// {"p": 11, "q": 11, "d": 2, "k": 1, "coeffs": {"2": 1, "1": 1}}; "q" is optional.
  static PolyInput from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

enum class Kernel { Parallel, Serial, Reference };

struct ExpSumOptions {
  Kernel kernel = Kernel::Parallel;
  /// Largest |F_{q^l}^x| enumerated before a ResourceError.
  std::uint64_t budget = 10'000'000;
};

struct SumMeta {
  std::uint32_t precision = 0;          // N of the result
  std::uint32_t working_precision = 0;  // digits carried through the enumeration
  std::size_t length = 0;               // M
  std::uint64_t elements = 0;           // q^l - 1
  Kernel kernel = Kernel::Parallel;
};

struct SumResult {
  int l = 0;
  TSeries series;
  SumMeta meta;
};

/// S_f(l, T) = sum_{x in F_{q^l}^x} (1+T)^{Tr(f^(x^))} mod (p^N, T^M).
SumResult exp_sum(const PolyInput& f, int l, std::uint32_t N, std::size_t M, const ExpSumOptions& opts = {});

/// N + v_p(m_max!): precision at which S_f(l) must be known for C_f to be certified mod p^N.
std::uint32_t cfunction_guard(std::uint32_t p, std::uint32_t N, std::size_t m_max);

struct CFunction {
  BiSeries series;
  std::vector<SumResult> sums;  // l = 1..m_max at the guarded precision
};

/// C_f(s, T) mod (p^N, T^M, s^(m_max+1)).
CFunction c_function(const PolyInput& f, std::size_t m_max, std::uint32_t N, std::size_t M,
                     const ExpSumOptions& opts = {});
/// Same from precomputed sums S_f(1..m_max); the result has precision min(sums) - v_p(m_max!).
BiSeries c_from_sums(const std::vector<SumResult>& sums, std::uint64_t q, std::size_t m_max);

struct LFunction {
  BiSeries series;  // C(s) C(qs)^-1
  BiSeries direct;  // exp(sum S_f(l) s^l / l)
  CFunction c;
  bool paths_agree = false;
};

/// L_f(s, T) by both routes; a disagreement is an InternalError.
LFunction l_function(const PolyInput& f, std::size_t m_max, std::uint32_t N, std::size_t M,
                     const ExpSumOptions& opts = {});
LFunction l_from_c(CFunction c, std::uint64_t q, std::uint32_t N);

/// (m, ord_T of the s^m coefficient) for m = 0..max.
NewtonPoints newton_points_T(const BiSeries& series);

struct Specialization {
  std::vector<CyclotomicElement> coeffs;
  std::vector<Valuation> ords;
  NewtonPoints points;
  int cap = 0;  // (p-1) N: valuations at or above it are not certified
};

/// Substitute T = pi1 = zeta_p - 1 into each s-coefficient, at precision N.
/// Requires the T-truncation M >= (p-1) N.
Specialization specialize_pi1(const BiSeries& series, std::uint32_t N);

}  // namespace tadic
