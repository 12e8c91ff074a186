#pragma once

#include <string>
#include <vector>

#include "morpho/scene.hpp"

namespace morpho {

using Loop = std::vector<Eigen::Vector2d>;

/// Closed boundary loops of the union of pixel squares; outer loops counter-clockwise, holes clockwise.
/// Collinear runs are merged, so every vertex is a corner.
std::vector<Loop> raster_boundary(const RasterSet& rs);

/// The viewport box [lo, hi] clipped by every half-plane of a 2-D polytope.
Loop clip_polygon(const HPolytope& p, const Eigen::Vector2d& lo, const Eigen::Vector2d& hi);

struct LayerSpec {
  std::vector<double> erosion_radii;
  bool inscribed = false;
};

/// "erosion:r1,r2", "inscribed", or both joined by ';'.
LayerSpec parse_layers(const std::string& text);

class SvgDocument {
 public:
  /// World box [lo, hi] mapped to a canvas width_px wide, y pointing up.
  SvgDocument(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, double width_px = 800);

  void add_group(const std::string& id, const std::string& fill, const std::vector<Loop>& loops);
  void add_circle(const std::string& id, const Eigen::Vector2d& center, double radius, const std::string& stroke);
  std::string str() const;

 private:
  std::string point(const Eigen::Vector2d& p) const;

  Eigen::Vector2d lo_, hi_;
  double scale_ = 1;
  std::string body_;
};

/// Base set plus one eroded layer per radius, filled in grays that lighten inward.
std::string render_svg(const Scene& scene, const LayerSpec& layers);

}  // namespace morpho
