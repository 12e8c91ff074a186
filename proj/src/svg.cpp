#include "morpho/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "morpho/simplex.hpp"

namespace morpho {

namespace {

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string gray(int v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", v, v, v);
  return buf;
}

void require_2d(const Scene& s) {
  if (s.dimension != 2) throw Error(ErrorKind::UnsupportedDimension, "rendering needs a 2-D payload");
}

// Bounding box of a polytope, or a box around its Chebyshev center when unbounded.
std::pair<Eigen::Vector2d, Eigen::Vector2d> view_box(const HPolytope& p) {
  Eigen::Vector2d lo, hi;
  bool bounded = true;
  for (int a = 0; a < 2 && bounded; ++a)
    for (double sgn : {1.0, -1.0}) {
      Vecd c = Vecd::Zero(2);
      c(a) = sgn;
      const lp::Result r = lp::maximize(p.normals(), p.offsets(), c);
      if (r.status != lp::Status::Optimal) {
        bounded = false;
        break;
      }
      (sgn > 0 ? hi : lo)(a) = sgn * r.objective;
    }
  if (bounded) {
    const double pad = 0.05 * std::max(hi(0) - lo(0), hi(1) - lo(1));
    return {lo.array() - pad, hi.array() + pad};
  }
  const Balld b = chebyshev_ball(p);
  const double half = 10 * (std::isfinite(b.radius) ? std::max(1.0, b.radius) : 1.0);
  const Eigen::Vector2d c = b.center.size() == 2 && b.center.allFinite() ? Eigen::Vector2d(b.center) : Eigen::Vector2d::Zero();
  return {c.array() - half, c.array() + half};
}

}  // namespace

std::vector<Loop> raster_boundary(const RasterSet& rs) {
  if (rs.dimension() != 2) throw Error(ErrorKind::UnsupportedDimension, "boundary tracing is 2-D only");
  const int w = rs.dims()[0], h = rs.dims()[1];
  const int vw = w + 1;
  auto at = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < w && j < h && rs[static_cast<std::size_t>(j) * static_cast<std::size_t>(w) + static_cast<std::size_t>(i)];
  };
  // Directed unit edges with the set on their left, indexed by start vertex.
  std::vector<std::uint8_t> out(static_cast<std::size_t>(vw) * static_cast<std::size_t>(h + 1), 0);
  auto vid = [&](int i, int j) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(vw) + static_cast<std::size_t>(i); };
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      if (!at(i, j)) continue;
      if (!at(i, j - 1)) out[vid(i, j)] |= 1;
      if (!at(i + 1, j)) out[vid(i + 1, j)] |= 2;
      if (!at(i, j + 1)) out[vid(i + 1, j + 1)] |= 4;
      if (!at(i - 1, j)) out[vid(i, j + 1)] |= 8;
    }

  const double step = rs.spacing();
  const Vecd& origin = rs.window().origin;
  auto world = [&](int i, int j) {
    return Eigen::Vector2d(origin(0) + step * (i - 0.5), origin(1) + step * (j - 0.5));
  };

  std::vector<Loop> loops;
  for (int j0 = 0; j0 <= h; ++j0)
    for (int i0 = 0; i0 <= w; ++i0) {
      while (out[vid(i0, j0)]) {
        int d = 0;
        while (!(out[vid(i0, j0)] & (1 << d))) ++d;
        int i = i0, j = j0;
        std::vector<std::pair<int, int>> corners;
        std::vector<int> dirs;
        for (;;) {
          out[vid(i, j)] &= static_cast<std::uint8_t>(~(1 << d));
          dirs.push_back(d);
          corners.emplace_back(i, j);
          i += kDx[d];
          j += kDy[d];
          if (i == i0 && j == j0) break;
          const std::uint8_t m = out[vid(i, j)];
          // Left turn first keeps diagonal neighbours in separate loops.
          const int next[3] = {(d + 1) % 4, d, (d + 3) % 4};
          int nd = -1;
          for (int c : next)
            if (m & (1 << c)) {
              nd = c;
              break;
            }
          if (nd < 0) throw Error(ErrorKind::InvalidArgument, "open boundary chain");
          d = nd;
        }
        Loop loop;
        const std::size_t n = dirs.size();
        for (std::size_t k = 0; k < n; ++k)
          if (dirs[k] != dirs[(k + n - 1) % n]) loop.push_back(world(corners[k].first, corners[k].second));
        loops.push_back(std::move(loop));
      }
    }
  return loops;
}

Loop clip_polygon(const HPolytope& p, const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
  if (p.dimension() != 2) throw Error(ErrorKind::UnsupportedDimension, "clipping needs a 2-D polytope");
  Loop poly{{lo(0), lo(1)}, {hi(0), lo(1)}, {hi(0), hi(1)}, {lo(0), hi(1)}};
  for (const auto& hs : p.halfspaces()) {
    const Eigen::Vector2d n = hs.normal();
    Loop next;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Eigen::Vector2d& a = poly[k];
      const Eigen::Vector2d& b = poly[(k + 1) % poly.size()];
      const double da = n.dot(a) - hs.offset(), db = n.dot(b) - hs.offset();
      if (da <= 0) next.push_back(a);
      if ((da < 0 && db > 0) || (da > 0 && db < 0)) next.push_back(a + (b - a) * (da / (da - db)));
    }
    poly = std::move(next);
    if (poly.empty()) break;
  }
  return poly;
}

LayerSpec parse_layers(const std::string& text) {
  LayerSpec spec;
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ';')) {
    if (part.empty()) continue;
    if (part == "inscribed") {
      spec.inscribed = true;
      continue;
    }
    if (part.rfind("erosion:", 0) != 0) throw Error(ErrorKind::Parse, "layer spec '" + part + "' is not erosion:r1,r2 or inscribed");
    std::stringstream radii(part.substr(8));
    std::string r;
    while (std::getline(radii, r, ',')) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(r, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != r.size() || !(v >= 0)) throw Error(ErrorKind::Parse, "bad erosion radius '" + r + "'");
      spec.erosion_radii.push_back(v);
    }
  }
  return spec;
}

SvgDocument::SvgDocument(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, double width_px)
    : lo_(lo), hi_(hi), scale_(width_px / (hi(0) - lo(0))) {}

std::string SvgDocument::point(const Eigen::Vector2d& p) const {
  return fmt((p(0) - lo_(0)) * scale_) + " " + fmt((hi_(1) - p(1)) * scale_);
}

void SvgDocument::add_group(const std::string& id, const std::string& fill, const std::vector<Loop>& loops) {
  body_ += "<g id=\"" + id + "\" fill=\"" + fill + "\" stroke=\"#000000\" stroke-width=\"0.5\" fill-rule=\"evenodd\">\n";
  if (!loops.empty()) {
    body_ += "<path d=\"";
    bool first = true;
    for (const Loop& loop : loops) {
      if (loop.empty()) continue;
      body_ += (first ? "M" : " M") + point(loop.front());
      for (std::size_t k = 1; k < loop.size(); ++k) body_ += " L" + point(loop[k]);
      body_ += " Z";
      first = false;
    }
    body_ += "\"/>\n";
  }
  body_ += "</g>\n";
}

void SvgDocument::add_circle(const std::string& id, const Eigen::Vector2d& center, double radius, const std::string& stroke) {
  const std::string p = point(center);
  const auto space = p.find(' ');
  body_ += "<g id=\"" + id + "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1\">\n<circle cx=\"" +
           p.substr(0, space) + "\" cy=\"" + p.substr(space + 1) + "\" r=\"" + fmt(radius * scale_) + "\"/>\n</g>\n";
}

std::string SvgDocument::str() const {
  const std::string w = fmt((hi_(0) - lo_(0)) * scale_), h = fmt((hi_(1) - lo_(1)) * scale_);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w +
         "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n<rect width=\"" + w + "\" height=\"" + h +
         "\" fill=\"#ffffff\"/>\n" + body_ + "</svg>\n";
}

std::string render_svg(const Scene& scene, const LayerSpec& layers) {
  require_2d(scene);
  const std::size_t count = layers.erosion_radii.size() + 1;
  auto shade = [&](std::size_t i) { return gray(count == 1 ? 128 : static_cast<int>(96 + (224 - 96) * i / (count - 1))); };

  if (const auto* p = std::get_if<HPolytope>(&scene.payload)) {
    const auto [lo, hi] = view_box(*p);
    SvgDocument doc(lo, hi);
    doc.add_group("layer-0", shade(0), {clip_polygon(*p, lo, hi)});
    for (std::size_t i = 0; i < layers.erosion_radii.size(); ++i) {
      std::vector<Loop> loops;
      try {
        loops.push_back(clip_polygon(erode_polytope(*p, layers.erosion_radii[i]), lo, hi));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyResult) throw;
      }
      doc.add_group("layer-" + std::to_string(i + 1), shade(i + 1), loops);
    }
    if (layers.inscribed) {
      if (const auto ball = inscribed_ball(*p)) doc.add_circle("inscribed", Eigen::Vector2d(ball->center), ball->radius, "#c00000");
    }
    return doc.str();
  }
  if (const auto* rs = std::get_if<RasterSet>(&scene.payload)) {
    const RasterWindow& w = rs->window();
    const Eigen::Vector2d lo(w.origin(0) - 0.5 * w.spacing, w.origin(1) - 0.5 * w.spacing);
    const Eigen::Vector2d hi(lo(0) + w.spacing * w.dims[0], lo(1) + w.spacing * w.dims[1]);
    SvgDocument doc(lo, hi);
    doc.add_group("layer-0", shade(0), raster_boundary(*rs));
    for (std::size_t i = 0; i < layers.erosion_radii.size(); ++i)
      doc.add_group("layer-" + std::to_string(i + 1), shade(i + 1), raster_boundary(erode_raster(*rs, layers.erosion_radii[i])));
    if (layers.inscribed) throw Error(ErrorKind::InvalidArgument, "the inscribed layer needs a polytope payload");
    return doc.str();
  }
  throw Error(ErrorKind::UnsupportedDimension, "rendering needs a 2-D payload");
}

}  // namespace morpho
