#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "morpho/convex.hpp"
#include "morpho/interval1d.hpp"
#include "morpho/raster.hpp"

namespace morpho {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json to_json(const Vecd& v);
Json to_json(const Similarityd& s);
Json to_json(const HalfSpaced& h);
Json to_json(const Balld& b);
Json to_json(const ResilienceCertificate& c);
/// {"format": 1, "dimension": n, "polytope": [...]}.
Json scene_json(const HPolytope& p);

/// Parsers report the offending field in the Parse error message.
Vecd vector_from_json(const Json& j, const std::string& field);
Similarityd similarity_from_json(const Json& j);
HalfSpaced halfspace_from_json(const Json& j);
HPolytope polytope_from_json(const Json& array);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
/// Syntax errors carry line and column.
Json read_json(const std::filesystem::path& path);
Json parse_json(const std::string& text);
std::string dump_json(const Json& j);

IntervalSet1D read_interval_set(const std::filesystem::path& path);
void write_interval_set(const std::filesystem::path& path, const IntervalSet1D& s);

/// Sidecar lives next to the image as <path>.json.
std::filesystem::path sidecar_path(const std::filesystem::path& pgm);
/// Binary P5, 255 = set; the top file row is the largest axis-1 index. n = 1 writes one row.
void write_pgm(const std::filesystem::path& path, const RasterSet& rs);
/// Any byte other than 0 or 255 is rejected.
RasterSet read_pgm(const std::filesystem::path& path);

}  // namespace morpho
