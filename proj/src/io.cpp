#include "morpho/io.hpp"

#include <fstream>
#include <sstream>

namespace morpho {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) bad("field '" + field + "' must be a number");
  return j.get<double>();
}

const Json& member(const Json& j, const char* key, const std::string& context) {
  if (!j.is_object()) bad(context + " must be an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(context + " is missing field '" + key + "'");
  return *it;
}

void check_format(const Json& j, const std::string& context) {
  if (!j.contains("format")) return;
  if (!j["format"].is_number_integer() || j["format"].get<int>() != kFormatVersion)
    bad(context + ": unsupported 'format' (expected 1)");
}

}  // namespace

Json to_json(const Vecd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json to_json(const Similarityd& s) {
  Json rot = Json::array();
  for (Eigen::Index i = 0; i < s.rotation().rows(); ++i)
    for (Eigen::Index k = 0; k < s.rotation().cols(); ++k) rot.push_back(s.rotation()(i, k));
  return Json{{"format", kFormatVersion}, {"scale", s.scale()}, {"rotation", rot}, {"offset", to_json(s.offset())}};
}

Json to_json(const HalfSpaced& h) { return Json{{"normal", to_json(h.normal())}, {"offset", h.offset()}}; }

Json to_json(const Balld& b) {
  return Json{{"center", to_json(b.center)}, {"radius", b.radius},
              {"closed", b.openness == Openness::Closed}};
}

Json to_json(const ResilienceCertificate& c) {
  Json j{{"format", kFormatVersion}, {"kind", to_string(c.kind)}};
  j["inscribed"] = c.inscribed ? to_json(*c.inscribed) : Json(nullptr);
  j["exscribed"] = c.exscribed ? to_json(*c.exscribed) : Json(nullptr);
  j["direction"] = c.direction ? to_json(*c.direction) : Json(nullptr);
  j["angle"] = c.angle ? Json(*c.angle) : Json(nullptr);
  j["diagnostic"] = c.diagnostic;
  return j;
}

Json scene_json(const HPolytope& p) {
  Json hs = Json::array();
  for (const auto& h : p.halfspaces()) hs.push_back(to_json(h));
  return Json{{"format", kFormatVersion}, {"dimension", p.dimension()}, {"polytope", hs}};
}

Vecd vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad("field '" + field + "' must be a nonempty array of numbers");
  Vecd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

Similarityd similarity_from_json(const Json& j) {
  check_format(j, "similarity");
  const double scale = number(member(j, "scale", "similarity"), "scale");
  const Vecd offset = vector_from_json(member(j, "offset", "similarity"), "offset");
  const Vecd flat = vector_from_json(member(j, "rotation", "similarity"), "rotation");
  const Eigen::Index n = offset.size();
  if (flat.size() != n * n)
    throw Error(ErrorKind::DimensionMismatch, "field 'rotation' must hold n*n entries for n = " + std::to_string(n));
  Matd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) q(i, k) = flat(i * n + k);
  return Similarityd(scale, q, offset);
}

HalfSpaced halfspace_from_json(const Json& j) {
  return HalfSpaced(vector_from_json(member(j, "normal", "half-space"), "normal"),
                    number(member(j, "offset", "half-space"), "offset"));
}

HPolytope polytope_from_json(const Json& array) {
  if (!array.is_array() || array.empty()) bad("field 'polytope' must be a nonempty array of half-spaces");
  std::vector<HalfSpaced> hs;
  for (std::size_t i = 0; i < array.size(); ++i) {
    try {
      hs.push_back(halfspace_from_json(array[i]));
    } catch (const Error& e) {
      throw Error(e.kind(), "polytope[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return HPolytope(std::move(hs));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(e.what());
  }
}

Json read_json(const std::filesystem::path& path) {
  try {
    return parse_json(read_text(path));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

IntervalSet1D read_interval_set(const std::filesystem::path& path) { return interval_set_from_text(read_text(path)); }

void write_interval_set(const std::filesystem::path& path, const IntervalSet1D& s) { write_text(path, to_text(s)); }

std::filesystem::path sidecar_path(const std::filesystem::path& pgm) {
  return std::filesystem::path(pgm.string() + ".json");
}

void write_pgm(const std::filesystem::path& path, const RasterSet& rs) {
  const int n = rs.dimension();
  if (n > 2) throw Error(ErrorKind::UnsupportedDimension, "PGM output supports 1-D and 2-D rasters");
  const int w = rs.dims()[0];
  const int h = n == 2 ? rs.dims()[1] : 1;
  std::string data = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  const std::size_t header = data.size();
  data.resize(header + static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int row = 0; row < h; ++row)
    for (int col = 0; col < w; ++col) {
      const std::size_t src = static_cast<std::size_t>(h - 1 - row) * static_cast<std::size_t>(w) + static_cast<std::size_t>(col);
      data[header + static_cast<std::size_t>(row) * static_cast<std::size_t>(w) + static_cast<std::size_t>(col)] =
          static_cast<char>(rs[src] ? 255 : 0);
    }
  write_text(path, data);

  Json side{{"format", kFormatVersion},
            {"origin", to_json(rs.window().origin)},
            {"spacing", rs.spacing()},
            {"border_policy", to_string(rs.border_policy())},
            {"valid_margin", rs.valid_margin()}};
  write_text(sidecar_path(path), dump_json(side));
}

RasterSet read_pgm(const std::filesystem::path& path) {
  const std::string data = read_text(path);
  std::istringstream in(data);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (!in || magic != "P5") bad(path.string() + ": not a binary PGM (P5)");
  if (maxval != 255) bad(path.string() + ": maxval must be 255");
  in.get();
  const auto start = static_cast<std::size_t>(in.tellg());
  const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (w <= 0 || h <= 0 || data.size() != start + count) bad(path.string() + ": pixel data size does not match the header");

  const Json side = read_json(sidecar_path(path));
  check_format(side, "sidecar");
  const Vecd origin = vector_from_json(member(side, "origin", "sidecar"), "origin");
  const double spacing = number(member(side, "spacing", "sidecar"), "spacing");
  const Json& pol = member(side, "border_policy", "sidecar");
  if (!pol.is_string() || (pol != "inside" && pol != "outside")) bad("sidecar field 'border_policy' must be \"inside\" or \"outside\"");
  const double margin = number(member(side, "valid_margin", "sidecar"), "valid_margin");
  std::vector<int> dims{w};
  if (origin.size() == 2) dims.push_back(h);
  else if (origin.size() != 1 || h != 1) throw Error(ErrorKind::DimensionMismatch, "sidecar origin does not match the image shape");

  RasterSet rs(RasterWindow(origin, spacing, dims), pol == "inside" ? BorderPolicy::Inside : BorderPolicy::Outside, margin);
  for (int row = 0; row < h; ++row)
    for (int col = 0; col < w; ++col) {
      const auto v = static_cast<unsigned char>(data[start + static_cast<std::size_t>(row) * static_cast<std::size_t>(w) + static_cast<std::size_t>(col)]);
      if (v != 0 && v != 255)
        bad(path.string() + ": pixel (" + std::to_string(col) + ", " + std::to_string(row) + ") is neither 0 nor 255");
      rs.set(static_cast<std::size_t>(h - 1 - row) * static_cast<std::size_t>(w) + static_cast<std::size_t>(col), v == 255);
    }
  return rs;
}

}  // namespace morpho
