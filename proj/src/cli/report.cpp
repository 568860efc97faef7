#include "tadic/cli/report.hpp"

#include <algorithm>

namespace tadic::cli {

std::string str(const Rational& r) { return r.str(); }
std::string str(std::int64_t v) { return std::to_string(v); }

Json polygon_json(const Polygon& P) {
  Json verts = Json::array();
  for (const auto& v : P.vertices()) verts.push_back({str(v.m), str(v.y)});
  Json values = Json::array();
  for (const auto& y : P.values()) values.push_back(str(y));
  Json j;
  j["vertices"] = verts;
  j["values"] = values;
  j["convex"] = P.is_convex();
  if (P.any_at_least()) {
    Json flags = Json::array();
    for (int a = 0; a < P.length(); ++a) {
      if (P.at_least(a)) flags.push_back(Json::array({str(a), str(a + 1)}));
    }
    j["lower_bound_segments"] = flags;
  }
  return j;
}

Json points_json(const NewtonPoints& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back({{"m", str(p.m)}, {"ord", str(p.ord)}, {"certified", p.certified}});
  return a;
}

Json rows_json(const std::vector<BoundRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    a.push_back({{"m", str(r.m)},
                 {"ord", to_string(r.ord)},
                 {"certified", r.ord.certified},
                 {"bound", str(r.bound)},
                 {"verdict", to_string(r.verdict)}});
  }
  return a;
}

Json comparison_json(const Comparison& c) {
  Json j;
  j["holds"] = c.holds;
  if (!c.holds) {
    j["witness"] = str(c.witness);
    j["lhs"] = str(c.lhs);
    j["rhs"] = str(c.rhs);
  }
  return j;
}

bool any_fail(const std::vector<BoundRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.verdict == Verdict::Fail; });
}

std::string plot_block(const std::string& name, const Polygon& P) {
  std::string s = "# " + name + "\n";
  for (int m = 0; m <= P.length(); ++m) s += std::to_string(m) + " " + P(m).str() + "\n";
  return s + "\n";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace tadic::cli
