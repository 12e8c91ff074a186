#include "morpho/scene.hpp"

#include <cmath>

namespace morpho {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

double num(const Json& j, const char* key, double fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) bad(std::string("field '") + key + "' must be a number");
  return it->get<double>();
}

int integer(const Json& j, const char* key, int fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return it->get<int>();
}

int integer(const Json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("generator is missing field '") + key + "'");
  return integer(j, key, 0);
}

std::vector<double> numbers(const Json& j, const char* key) {
  const Vecd v = vector_from_json(j.contains(key) ? j[key] : Json(), key);
  return {v.data(), v.data() + v.size()};
}

RasterWindow window_from(const Json& spec, const WindowOverride& o, int default_grid, double default_spacing,
                         int dimension = 2) {
  const int grid = o.grid ? *o.grid : integer(spec, "grid", default_grid);
  const double h = o.spacing ? *o.spacing : num(spec, "spacing", default_spacing);
  if (grid < 1) bad("field 'grid' must be >= 1");
  if (!(h > 0)) bad("field 'spacing' must be > 0");
  const Vecd center = spec.contains("center") ? vector_from_json(spec["center"], "center") : Vecd::Zero(dimension);
  if (center.size() != dimension) throw Error(ErrorKind::DimensionMismatch, "field 'center' has the wrong dimension");
  return RasterWindow::centered(center, h, std::vector<int>(static_cast<std::size_t>(dimension), grid));
}

// Window of `grid` pixels per side covering the invariant ball with a small pad.
RasterWindow attractor_window(const IFS& ifs, const Json& spec, const WindowOverride& o) {
  const Balld ball = ifs.invariant_ball();
  const int grid = o.grid ? *o.grid : integer(spec, "grid", 1024);
  if (grid < 2) bad("field 'grid' must be >= 2");
  const double h = o.spacing ? *o.spacing : 2.1 * ball.radius / grid;
  return RasterWindow::centered(ball.center, h, std::vector<int>(static_cast<std::size_t>(ifs.dimension()), grid));
}

IFS ifs_from(const Json& spec) {
  const std::string type = spec["type"];
  if (type == "sierpinski") return sierpinski_ifs(num(spec, "side", 1.0));
  if (type == "koch") return koch_ifs();
  const auto it = spec.find("maps");
  if (it == spec.end() || !it->is_array()) bad("ifs generator needs a 'maps' array of similarities");
  std::vector<Similarityd> maps;
  for (const auto& m : *it) maps.push_back(similarity_from_json(m));
  return IFS(std::move(maps));
}

Scene raster_scene(RasterSet rs) {
  Scene s;
  s.dimension = rs.dimension();
  s.payload = std::move(rs);
  return s;
}

Scene polytope_scene(HPolytope p) {
  Scene s;
  s.dimension = static_cast<int>(p.dimension());
  s.payload = std::move(p);
  return s;
}

}  // namespace

const char* payload_name(const Payload& p) {
  switch (p.index()) {
    case 0: return "polytope";
    case 1: return "intervals";
    default: return "raster";
  }
}

Scene generate(const Json& spec, const WindowOverride& o) {
  if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
    bad("generator spec needs a string field 'type'");
  const std::string type = spec["type"];

  if (type == "regular_polygon") {
    const Vecd c = spec.contains("center") ? vector_from_json(spec["center"], "center") : Vecd::Zero(2);
    return polytope_scene(regular_polygon(integer(spec, "sides"), num(spec, "circumradius", 1.0), c));
  }
  if (type == "triangle") {
    const auto a = numbers(spec, "angles");
    if (a.size() != 3) bad("field 'angles' must hold three angles");
    return polytope_scene(triangle({a[0], a[1], a[2]}, num(spec, "inradius", 1.0)));
  }
  if (type == "box") {
    return polytope_scene(axis_box(vector_from_json(spec.value("lo", Json()), "lo"), vector_from_json(spec.value("hi", Json()), "hi")));
  }
  if (type == "tent") {
    const TentParams p{num(spec, "gamma13", 0.4), num(spec, "gamma24", 0.7), num(spec, "inradius", 1.0)};
    const int stage = integer(spec, "stage", 1);
    if (stage == 1 || p.gamma13 == p.gamma24) return polytope_scene(tent(p));
    const TentStages st = tent_pipeline(p);
    if (stage == 2) return polytope_scene(st.x2);
    if (stage == 3) return polytope_scene(st.x3);
    bad("field 'stage' must be 1, 2 or 3");
  }
  if (type == "example1") {
    const int k = integer(spec, "k", 3);
    const std::string which = spec.value("set", std::string("A"));
    Scene s;
    s.dimension = 1;
    if (which == "A") s.payload = build_A(k);
    else if (which == "Y") s.payload = build_Y(k);
    else if (which == "X") s.payload = build_X(k).first;
    else bad("field 'set' must be \"A\", \"X\" or \"Y\"");
    return s;
  }
  if (type == "sierpinski" || type == "koch" || type == "ifs") {
    const IFS ifs = ifs_from(spec);
    return raster_scene(ifs_invariant(ifs, integer(spec, "depth", 10), attractor_window(ifs, spec, o)));
  }
  if (type == "sierpinski_extension") return raster_scene(sierpinski_extension(window_from(spec, o, 512, 1.0)));
  if (type == "koch_unbounded") return raster_scene(koch_unbounded(window_from(spec, o, 512, 1.0)));
  if (type == "koch_resilient") {
    const RasterWindow w = window_from(spec, o, 512, 1.0);
    Scene s = raster_scene(koch_resilient(w, num(spec, "r_prime", 8 * w.spacing)));
    s.transform = Similarityd::homothety(Vecd::Zero(2), 3.0);
    return s;
  }
  if (type == "square_extension") {
    const double scale = num(spec, "scale", 2.0);
    const HPolytope base = axis_box(vector_from_json(spec.value("lo", Json::array({10, -3})), "lo"),
                                    vector_from_json(spec.value("hi", Json::array({16, 3})), "hi"));
    const Similarityd s = Similarityd::homothety(Vecd::Zero(2), scale);
    Scene out = raster_scene(scale_invariant_extension(base, s, integer(spec, "k_min", -6), integer(spec, "k_max", 6),
                                                       window_from(spec, o, 1024, 1.0)));
    out.transform = s;
    return out;
  }
  if (type == "spiral") {
    SpiralParams p{num(spec, "a", 1.0), num(spec, "b", 0.15), num(spec, "theta_min", 0.0), num(spec, "theta_max", 26.0)};
    Scene s = raster_scene(spiral_S1(p, window_from(spec, o, 1024, 0.06)));
    s.spiral = p;
    return s;
  }
  if (type == "discrete_spiral") {
    const Similarityd s = Similarityd::spiral2d(Vecd::Zero(2), num(spec, "scale", 1.3), num(spec, "angle", 1.0));
    const HPolytope rect = axis_box(vector_from_json(spec.value("lo", Json::array({60, -30})), "lo"),
                                    vector_from_json(spec.value("hi", Json::array({200, 30})), "hi"));
    Scene out = raster_scene(discrete_spiral_Q(s, rect, integer(spec, "i_min", -23), integer(spec, "i_max", 14),
                                               num(spec, "r", 5.2), window_from(spec, o, 4096, 1.0)));
    out.transform = s;
    return out;
  }
  if (type == "plaid") {
    std::vector<double> angles{0, M_PI / 4, M_PI / 2, 3 * M_PI / 4};
    if (spec.contains("angles")) angles = numbers(spec, "angles");
    Scene s = raster_scene(plaid(integer(spec, "k", 3), angles, spec.value("radial", true), window_from(spec, o, 512, 0.5)));
    return s;
  }
  bad("unknown generator type '" + type + "'");
}

Scene scene_from_json(const Json& j, const std::filesystem::path& base_dir, const WindowOverride& o) {
  if (!j.is_object()) bad("scene must be a JSON object");
  if (j.contains("format") && (!j["format"].is_number_integer() || j["format"] != kFormatVersion))
    bad("scene: unsupported 'format' (expected 1)");
  if (j.contains("type")) return generate(j, o);

  int payloads = 0;
  for (const char* key : {"polytope", "intervals", "raster", "generator"}) payloads += j.contains(key) ? 1 : 0;
  if (payloads != 1) bad("scene needs exactly one of 'polytope', 'intervals', 'raster', 'generator'");

  Scene s;
  if (j.contains("polytope")) {
    s = polytope_scene(polytope_from_json(j["polytope"]));
  } else if (j.contains("intervals")) {
    if (!j["intervals"].is_string()) bad("field 'intervals' must be a file name");
    s.dimension = 1;
    s.payload = read_interval_set(base_dir / j["intervals"].get<std::string>());
  } else if (j.contains("raster")) {
    if (!j["raster"].is_string()) bad("field 'raster' must be a file name");
    s = raster_scene(read_pgm(base_dir / j["raster"].get<std::string>()));
  } else {
    s = generate(j["generator"], o);
  }

  if (j.contains("dimension")) {
    if (!j["dimension"].is_number_integer()) bad("field 'dimension' must be an integer");
    if (j["dimension"].get<int>() != s.dimension)
      throw Error(ErrorKind::DimensionMismatch, "field 'dimension' disagrees with the payload");
  }
  if (j.contains("transform")) {
    s.transform = similarity_from_json(j["transform"]);
    if (s.transform->dimension() != s.dimension)
      throw Error(ErrorKind::DimensionMismatch, "field 'transform' disagrees with the scene dimension");
  }
  if (j.contains("radii")) s.radii = numbers(j, "radii");
  return s;
}

Scene load_scene(const std::filesystem::path& path, const WindowOverride& o) {
  const std::string ext = path.extension().string();
  if (ext == ".pgm") return raster_scene(read_pgm(path));
  if (ext == ".txt") {
    Scene s;
    s.dimension = 1;
    s.payload = read_interval_set(path);
    return s;
  }
  const Json j = read_json(path);
  try {
    return scene_from_json(j, path.parent_path(), o);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void save_payload(const Scene& scene, const std::filesystem::path& out) {
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, HPolytope>) write_text(out, dump_json(scene_json(p)));
        else if constexpr (std::is_same_v<T, IntervalSet1D>) write_interval_set(out, p);
        else write_pgm(out, p);
      },
      scene.payload);
}

}  // namespace morpho
