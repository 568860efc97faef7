#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "tadic/expsum.hpp"

namespace tadic::cli {

enum class Format { Json, Csv, Plot };

struct RunConfig {
  std::string command;

  std::uint32_t p = 11;
  std::uint64_t q = 0;  // 0: q = p
  int d = 2;
  int k = 1;
  std::optional<std::map<int, std::uint64_t>> coeffs;

  std::uint64_t seed = 1;
  int trials = 0;

  std::optional<std::uint32_t> N;
  std::optional<std::size_t> M;       // T-truncation
  std::optional<std::size_t> P;       // pi-truncation
  std::optional<std::size_t> m_max;
  std::optional<std::size_t> m_trunc;
  int m = 1;                          // pi_m level for specialize
  bool allow_small_truncation = false;
  std::uint64_t budget = 10'000'000;
  Kernel kernel = Kernel::Parallel;

  bool sweep = false;
  std::uint32_t p_min = 5, p_max = 199;
  int d_min = 2, d_max = 6;
  int m_factor = 3;  // sweep m <= m_factor * d

  std::string out;
  Format format = Format::Json;
  bool timings = false;

  std::uint32_t b() const;
  /// The polynomial named by --coeffs, or x^d + x^k when none was given.
  PolyInput poly() const;
  bool p_gt_3d() const { return p > static_cast<std::uint32_t>(3 * d); }
  bool p_gt_d2d1() const { return p > static_cast<std::uint32_t>(d * (2 * d + 1)); }

  /// Exact, string-valued echo for reports.
  nlohmann::ordered_json echo() const;
};

/// "2:1,1:7" -> {2: 1, 1: 7}; throws DomainError on malformed input.
std::map<int, std::uint64_t> parse_coeffs(const std::string& text);

/// Overlay the keys of a JSON config object (same names as the long flags,
/// with dashes or underscores) onto `cfg`. Unknown keys are a DomainError.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

Format parse_format(const std::string& s);
Kernel parse_kernel(const std::string& s);
std::string kernel_name(Kernel k);

}  // namespace tadic::cli
