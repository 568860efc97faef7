#include "tadic/cli/config.hpp"

#include <algorithm>
#include <sstream>

namespace tadic::cli {

std::uint32_t RunConfig::b() const {
  if (q == 0 || q == p) return 1;
  std::uint64_t pw = p;
  std::uint32_t e = 1;
  while (pw < q) {
    pw *= p;
    ++e;
  }
  if (pw != q) throw DomainError("--q " + std::to_string(q) + " is not a power of --p " + std::to_string(p));
  return e;
}

PolyInput RunConfig::poly() const {
  PolyInput f;
  f.p = p;
  f.b = b();
  f.d = d;
  f.k = k;
  if (coeffs) {
    f.coeffs = *coeffs;
  } else {
    f.coeffs = {{d, 1}, {k, 1}};
  }
  f.validate();
  return f;
}

nlohmann::ordered_json RunConfig::echo() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["p"] = std::to_string(p);
  j["q"] = std::to_string(q == 0 ? p : q);
  j["d"] = std::to_string(d);
  j["k"] = std::to_string(k);
  if (coeffs) {
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (auto it = coeffs->rbegin(); it != coeffs->rend(); ++it) c[std::to_string(it->first)] = std::to_string(it->second);
    j["coeffs"] = c;
  }
  if (command == "explore") {
    j["seed"] = std::to_string(seed);
    j["trials"] = std::to_string(trials);
  }
  if (N) j["N"] = std::to_string(*N);
  if (M) j["M"] = std::to_string(*M);
  if (P) j["P"] = std::to_string(*P);
  if (m_max) j["mmax"] = std::to_string(*m_max);
  if (m_trunc) j["mtrunc"] = std::to_string(*m_trunc);
  if (command == "specialize") j["m"] = std::to_string(m);
  if (sweep) {
    j["sweep"] = {{"p_min", std::to_string(p_min)}, {"p_max", std::to_string(p_max)},
                  {"d_min", std::to_string(d_min)}, {"d_max", std::to_string(d_max)},
                  {"m_factor", std::to_string(m_factor)}};
  }
  return j;
}

std::map<int, std::uint64_t> parse_coeffs(const std::string& text) {
  std::map<int, std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("coefficient '" + item + "' is not exponent:value");
    try {
      std::size_t used = 0;
      const int e = std::stoi(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("exponent");
      const std::string v = item.substr(colon + 1);
      const auto c = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument("value");
      if (out.count(e)) throw DomainError("exponent " + std::to_string(e) + " given twice");
      out[e] = c;
    } catch (const std::logic_error&) {
      throw DomainError("coefficient '" + item + "' is not exponent:value");
    }
  }
  if (out.empty()) throw DomainError("--coeffs is empty");
  return out;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "plot") return Format::Plot;
  throw DomainError("unknown format '" + s + "' (json, csv, plot)");
}

Kernel parse_kernel(const std::string& s) {
  if (s == "parallel") return Kernel::Parallel;
  if (s == "serial") return Kernel::Serial;
  if (s == "reference") return Kernel::Reference;
  throw DomainError("unknown kernel '" + s + "' (parallel, serial, reference)");
}

std::string kernel_name(Kernel k) {
  switch (k) {
    case Kernel::Parallel: return "parallel";
    case Kernel::Serial: return "serial";
    case Kernel::Reference: return "reference";
  }
  return "?";
}

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string key = it.key();
      std::replace(key.begin(), key.end(), '-', '_');
      const auto& v = it.value();
      if (key == "command") cfg.command = v.get<std::string>();
      else if (key == "p") cfg.p = v.get<std::uint32_t>();
      else if (key == "q") cfg.q = v.get<std::uint64_t>();
      else if (key == "d") cfg.d = v.get<int>();
      else if (key == "k") cfg.k = v.get<int>();
      else if (key == "coeffs") {
        if (v.is_string()) {
          cfg.coeffs = parse_coeffs(v.get<std::string>());
        } else {
          std::map<int, std::uint64_t> c;
          for (auto e = v.begin(); e != v.end(); ++e) c[std::stoi(e.key())] = e.value().get<std::uint64_t>();
          cfg.coeffs = c;
        }
      }
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "trials") cfg.trials = v.get<int>();
      else if (key == "N") cfg.N = v.get<std::uint32_t>();
      else if (key == "M") cfg.M = v.get<std::size_t>();
      else if (key == "P") cfg.P = v.get<std::size_t>();
      else if (key == "mmax" || key == "m_max") cfg.m_max = v.get<std::size_t>();
      else if (key == "mtrunc" || key == "m_trunc") cfg.m_trunc = v.get<std::size_t>();
      else if (key == "m") cfg.m = v.get<int>();
      else if (key == "allow_small_truncation") cfg.allow_small_truncation = v.get<bool>();
      else if (key == "budget") cfg.budget = v.get<std::uint64_t>();
      else if (key == "kernel") cfg.kernel = parse_kernel(v.get<std::string>());
      else if (key == "sweep") cfg.sweep = v.get<bool>();
      else if (key == "p_min") cfg.p_min = v.get<std::uint32_t>();
      else if (key == "p_max") cfg.p_max = v.get<std::uint32_t>();
      else if (key == "d_min") cfg.d_min = v.get<int>();
      else if (key == "d_max") cfg.d_max = v.get<int>();
      else if (key == "m_factor") cfg.m_factor = v.get<int>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "format") cfg.format = parse_format(v.get<std::string>());
      else if (key == "timings") cfg.timings = v.get<bool>();
      else throw DomainError("unknown config key '" + it.key() + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad config value: ") + e.what());
  }
}

}  // namespace tadic::cli
