#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tadic/expsum.hpp"
#include "tadic/polygons.hpp"
#include "tadic/series.hpp"

namespace tadic {

/// gamma_0..gamma_{count-1} of E_f(x) = prod_j E(pi a^_j x^j), each a pi-series
/// mod (p^N, pi^P). q = p only.
std::vector<TSeries> ef_coefficients(const PolyInput& f, std::size_t count, std::size_t P, std::uint32_t N);

/// gamma_i by summing over all (n_j) with sum j n_j = i; exponential in i, meant for small i.
TSeries ef_coefficient_explicit(const PolyInput& f, std::size_t i, std::size_t P, std::uint32_t N);

/// [i/d] + ceil(r_i/k): lower bound for ord_pi(gamma_i).
int gamma_bound(std::int64_t i, int d, int k);

/// Smallest matrix size that keeps the discarded tail below pi^P: ceil((dP + d)/(p-1)) + 2.
std::size_t tail_rule(std::uint32_t p, int d, std::size_t P);

struct DworkOptions {
  /// Accept sizes below tail_rule (smoke tests only; digits are then not certified).
  bool allow_small_truncation = false;
};

struct GammaAudit {
  std::size_t checked = 0;
  std::size_t violations = 0;
  int min_slack = 0;  // min over certified entries of ord - bound
};

struct DworkMatrix {
  std::uint32_t p = 0;
  int d = 0, k = 0;
  std::size_t size = 0;       // M_trunc
  std::size_t pi_length = 0;  // P
  std::uint32_t precision = 0;
  std::vector<TSeries> gammas;   // gamma_0..gamma_{p(size-1)}
  std::vector<TSeries> entries;  // row-major, A[i][j] = gamma_{pi-j} or 0
  GammaAudit audit;

  const TSeries& at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

/// A_{i,j} = gamma_{pi-j} on the basis x^0..x^{M_trunc-1}. Every entry is checked
/// against gamma_bound; a violation is an InternalError.
DworkMatrix build_matrix(const PolyInput& f, std::size_t m_trunc, std::size_t P, std::uint32_t N,
                         const DworkOptions& opts = {});

/// c_0..c_m with det(1 - A s) = sum (-1)^m c_m s^m.
struct FredholmSeries {
  std::vector<TSeries> c;

  std::size_t max_degree() const { return c.size() - 1; }
  /// The s^m coefficient of det(1 - A s), i.e. (-1)^m c_m.
  TSeries det_coefficient(std::size_t m) const;
};

/// Newton identities on tr(A^l); precision drops by v_p(m_max!).
FredholmSeries fredholm(const DworkMatrix& A, std::size_t m_max);
/// Division-free oracle: c_m as the sum of the m x m principal minors.
FredholmSeries fredholm_minors(const DworkMatrix& A, std::size_t m_max);

enum class Verdict { Pass, Fail, Uncertified };
std::string to_string(Verdict v);

struct BoundRow {
  int m = 0;
  Valuation ord;
  Rational bound;
  Verdict verdict = Verdict::Pass;
};

/// Rows comparing ord_pi(c_m), or a certified lower bound, with polygon(m).
/// An uncertified ord still passes when its lower bound already meets the bound.
std::vector<BoundRow> theorem31_check(const FredholmSeries& F, const Polygon& polygon);

/// Rows for any list of (m, valuation) against a polygon, same verdict rules.
std::vector<BoundRow> bound_rows(const std::vector<Valuation>& ords, const Polygon& polygon);

/// c_m of det(1 - As) minus the T -> pi image of the s^m coefficient of C_f, sign
/// included; true when every pair agrees in the common window.
bool dual_path_agrees(const FredholmSeries& F, const BiSeries& c_function_T, std::size_t P);

/// Rebuild at twice the size and compare every c_m, m <= m_max.
bool truncation_stable(const PolyInput& f, std::size_t m_trunc, std::size_t P, std::uint32_t N, std::size_t m_max,
                       const FredholmSeries& reference);

}  // namespace tadic
