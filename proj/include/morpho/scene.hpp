#pragma once

#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include "morpho/generators.hpp"
#include "morpho/io.hpp"

namespace morpho {

using Payload = std::variant<HPolytope, IntervalSet1D, RasterSet>;

struct Scene {
  int dimension = 0;
  Payload payload;
  /// Candidate similarity for verification when none is given on the command line.
  std::optional<Similarityd> transform;
  std::vector<double> radii;
  /// Set for generated spirals so the predicted map can be derived.
  std::optional<SpiralParams> spiral;
};

/// Overrides for generated raster windows.
struct WindowOverride {
  std::optional<int> grid;
  std::optional<double> spacing;
};

/// Builds the payload described by a generator spec: {"type": ..., parameters}.
Scene generate(const Json& spec, const WindowOverride& window = {});

/// Scene JSON with exactly one of "polytope", "intervals", "raster", "generator".
/// File references are resolved relative to base_dir.
Scene scene_from_json(const Json& j, const std::filesystem::path& base_dir, const WindowOverride& window = {});
/// Accepts scene JSON, a bare generator spec, an interval text file (.txt) or a PGM (.pgm).
Scene load_scene(const std::filesystem::path& path, const WindowOverride& window = {});

/// Writes polytope JSON, interval text, or PGM plus sidecar depending on the payload.
void save_payload(const Scene& scene, const std::filesystem::path& out);

const char* payload_name(const Payload& p);

}  // namespace morpho
