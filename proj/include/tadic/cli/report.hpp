#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tadic/dwork.hpp"
#include "tadic/polygons.hpp"

namespace tadic::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "tadic-newton/1";

std::string str(const Rational& r);
std::string str(std::int64_t v);

Json polygon_json(const Polygon& P);
Json points_json(const NewtonPoints& pts);
Json rows_json(const std::vector<BoundRow>& rows);
Json comparison_json(const Comparison& c);

/// Any fail row.
bool any_fail(const std::vector<BoundRow>& rows);

/// Two-column "m value" block headed by "# name", for plotting tools.
std::string plot_block(const std::string& name, const Polygon& P);

std::string csv_escape(const std::string& s);

}  // namespace tadic::cli
