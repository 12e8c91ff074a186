#include "morpho/generators.hpp"

#include <algorithm>
#include <cmath>

#include "morpho/interval1d.hpp"
#include "morpho/simplex.hpp"

namespace morpho {

namespace {

void require_2d(const RasterWindow& w, const char* what) {
  if (w.dimension() != 2) throw Error(ErrorKind::UnsupportedDimension, std::string(what) + " is 2-D only");
}

double corner_radius(const RasterWindow& w) {
  double s = 0;
  for (int a = 0; a < w.dimension(); ++a) {
    const double lo = w.origin(a) - 0.5 * w.spacing;
    const double hi = w.origin(a) + w.spacing * (w.dims[static_cast<std::size_t>(a)] - 0.5);
    const double m = std::max(std::abs(lo), std::abs(hi));
    s += m * m;
  }
  return std::sqrt(s);
}

// ORs the closed polytope into rs, scanning only its bounding box when it is bounded.
void paint_polytope(RasterSet& rs, const HPolytope& p) {
  const RasterWindow& w = rs.window();
  const int n = w.dimension();
  if (p.dimension() != n) throw Error(ErrorKind::DimensionMismatch, "polytope and window dimensions differ");
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < n; ++a) {
    lo[static_cast<std::size_t>(a)] = 0;
    hi[static_cast<std::size_t>(a)] = w.dims[static_cast<std::size_t>(a)] - 1;
    for (double sgn : {1.0, -1.0}) {
      Vecd c = Vecd::Zero(n);
      c(a) = sgn;
      const lp::Result r = lp::maximize(p.normals(), p.offsets(), c);
      if (r.status == lp::Status::Infeasible) return;
      if (r.status != lp::Status::Optimal) continue;
      const double ext = sgn > 0 ? r.objective : -r.objective;
      const double t = (ext - w.origin(a)) / w.spacing;
      if (sgn > 0) hi[static_cast<std::size_t>(a)] = std::min(hi[static_cast<std::size_t>(a)], static_cast<int>(std::floor(t + 1e-9)));
      else lo[static_cast<std::size_t>(a)] = std::max(lo[static_cast<std::size_t>(a)], static_cast<int>(std::ceil(t - 1e-9)));
    }
    if (lo[static_cast<std::size_t>(a)] > hi[static_cast<std::size_t>(a)]) return;
  }
  const Matd normals = p.normals();
  const Vecd offsets = p.offsets();
  const double tol = 1e-9 * w.spacing;
  std::array<int, 3> idx{};
  for (idx[2] = lo[2]; idx[2] <= hi[2]; ++idx[2]) {
    for (idx[1] = lo[1]; idx[1] <= hi[1]; ++idx[1]) {
      for (idx[0] = lo[0]; idx[0] <= hi[0]; ++idx[0]) {
        const std::size_t f = w.flat_index(idx);
        if (rs.bits()[f]) continue;
        double x[3];
        w.center(f, x);
        bool inside = true;
        for (Eigen::Index k = 0; k < normals.rows() && inside; ++k) {
          double dot = 0;
          for (int a = 0; a < n; ++a) dot += normals(k, a) * x[a];
          inside = dot <= offsets(k) + tol;
        }
        if (inside) rs.bits()[f] = 1;
      }
    }
  }
}

// Shell containing every pixel that `extra` would add to `acc`.
double truncation_margin(const RasterSet& acc, const RasterSet& extra) {
  double margin = 0;
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (extra[i] && !acc[i]) margin = std::max(margin, acc.window().border_distance(i) + 0.5 * acc.spacing());
  return margin;
}

void require_some_valid(const RasterSet& rs) {
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs.valid(i)) return;
  throw Error(ErrorKind::EmptyOverlap, "truncation leaves no trusted pixel in the window");
}

void require_expanding(const Similarityd& s) {
  if (!(s.scale() > 1)) throw Error(ErrorKind::InvalidArgument, "scale-invariance needs a similarity with scale > 1");
}

void require_k_range(int k_min, int k_max) {
  if (k_min > 0 || k_max < 0) throw Error(ErrorKind::InvalidArgument, "k range must contain 0");
}

template <typename Render>
RasterSet extend(const RasterWindow& window, int k_min, int k_max, Render render) {
  RasterSet acc(window, BorderPolicy::Outside);
  for (int k = k_min; k <= k_max; ++k) acc = unite(acc, render(k));
  const double margin = std::max(truncation_margin(acc, render(k_max + 1)), truncation_margin(acc, render(k_min - 1)));
  acc.set_valid_margin(margin);
  require_some_valid(acc);
  return acc;
}

// Smallest k >= 0 with scale^k * radius beyond the window, and a k_min whose copies are below a pixel.
std::pair<int, int> auto_k_range(const RasterWindow& w, double alpha, double radius) {
  const int k_max = std::max(0, static_cast<int>(std::ceil(std::log(corner_radius(w) / radius) / std::log(alpha))));
  const int k_min = std::min(0, static_cast<int>(std::floor(std::log(0.25 * w.spacing / radius) / std::log(alpha))) - 1);
  return {k_min, k_max};
}

}  // namespace

HPolytope regular_polygon(int sides, double circumradius, const Vecd& center) {
  if (sides < 3) throw Error(ErrorKind::InvalidSides, "a regular polygon needs at least 3 sides");
  if (!(circumradius > 0)) throw Error(ErrorKind::InvalidArgument, "circumradius must be > 0");
  if (center.size() != 2) throw Error(ErrorKind::DimensionMismatch, "polygon center must be 2-D");
  const double apothem = circumradius * std::cos(M_PI / sides);
  std::vector<HalfSpaced> hs;
  for (int k = 0; k < sides; ++k) {
    const double t = 2 * M_PI * k / sides;
    const Vecd n = Eigen::Vector2d(std::cos(t), std::sin(t));
    hs.emplace_back(n, apothem + n.dot(center));
  }
  return HPolytope(std::move(hs), true);
}

HPolytope triangle(const std::array<double, 3>& angles, double inradius) {
  for (double a : angles)
    if (!(a > 0)) throw Error(ErrorKind::BadAngles, "triangle angles must be positive");
  if (std::abs(angles[0] + angles[1] + angles[2] - M_PI) > 1e-9)
    throw Error(ErrorKind::BadAngles, "triangle angles must sum to pi");
  if (!(inradius > 0)) throw Error(ErrorKind::InvalidArgument, "inradius must be > 0");
  // Consecutive outward normals turn by pi minus the angle at the shared vertex.
  std::vector<HalfSpaced> hs;
  double phi = -M_PI / 2;
  for (int k = 0; k < 3; ++k) {
    hs.emplace_back(Vecd(Eigen::Vector2d(std::cos(phi), std::sin(phi))), inradius);
    phi += M_PI - angles[static_cast<std::size_t>(k)];
  }
  return HPolytope(std::move(hs), true);
}

HPolytope axis_box(const Vecd& lo, const Vecd& hi) {
  if (lo.size() != hi.size()) throw Error(ErrorKind::DimensionMismatch, "box corners differ in dimension");
  std::vector<HalfSpaced> hs;
  for (Eigen::Index a = 0; a < lo.size(); ++a) {
    if (!(lo(a) < hi(a))) throw Error(ErrorKind::InvalidArgument, "box needs lo < hi on every axis");
    Vecd e = Vecd::Zero(lo.size());
    e(a) = 1;
    hs.emplace_back(e, hi(a));
    hs.emplace_back(-e, -lo(a));
  }
  return HPolytope(std::move(hs), true);
}

HPolytope tent(const TentParams& p) {
  for (double g : {p.gamma13, p.gamma24})
    if (!(g > 0 && g < M_PI / 2)) throw Error(ErrorKind::BadAngles, "tent angles must lie in (0, pi/2)");
  if (!(p.inradius > 0)) throw Error(ErrorKind::InvalidArgument, "tent radius must be > 0");
  const double s1 = std::sin(p.gamma13), c1 = std::cos(p.gamma13);
  const double s2 = std::sin(p.gamma24), c2 = std::cos(p.gamma24);
  const bool equal = p.gamma13 == p.gamma24;
  const double d13 = p.inradius;
  const double d24 = equal ? 2 * p.inradius : p.inradius;
  std::vector<HalfSpaced> hs;
  hs.emplace_back(Vecd(Eigen::Vector3d(s1, 0, c1)), d13);
  hs.emplace_back(Vecd(Eigen::Vector3d(0, s2, c2)), d24);
  hs.emplace_back(Vecd(Eigen::Vector3d(-s1, 0, c1)), d13);
  hs.emplace_back(Vecd(Eigen::Vector3d(0, -s2, c2)), d24);
  return HPolytope(std::move(hs), true);
}

TentStages tent_pipeline(const TentParams& p) {
  if (p.gamma13 == p.gamma24) throw Error(ErrorKind::BadAngles, "the X1..X3 pipeline needs unequal angles");
  TentStages st{tent(p), HPolytope(), HPolytope(), 0};
  const auto ball = inscribed_ball(st.x1);
  if (!ball) throw Error(ErrorKind::InvalidArgument, "tent has no inscribed ball");
  st.radius = ball->radius;
  st.x2 = erode_polytope(st.x1, st.radius);
  st.x3 = erode_polytope(st.x2, st.radius);
  return st;
}

RasterSet rasterize_polytope(const HPolytope& p, const RasterWindow& window, BorderPolicy policy) {
  RasterSet rs(window, policy);
  paint_polytope(rs, p);
  return rs;
}

RasterSet scale_invariant_extension(const RasterSet& base, const Similarityd& s, int k_min, int k_max) {
  require_expanding(s);
  require_k_range(k_min, k_max);
  RasterSet exact = base;
  exact.set_valid_margin(0);
  exact.set_border_policy(BorderPolicy::Outside);
  return extend(base.window(), k_min, k_max, [&](int k) {
    RasterSet copy = resample(exact, power(s, k));
    copy.set_valid_margin(0);
    return copy;
  });
}

RasterSet scale_invariant_extension(const HPolytope& base, const Similarityd& s, int k_min, int k_max,
                                    const RasterWindow& window) {
  require_expanding(s);
  require_k_range(k_min, k_max);
  return extend(window, k_min, k_max, [&](int k) { return rasterize_polytope(apply(power(s, k), base), window); });
}

RasterSet scale_invariant_extension(const IFS& base, const Similarityd& pre, int k_min, int k_max,
                                    const RasterWindow& window) {
  require_k_range(k_min, k_max);
  const Similarityd s = invert(base.maps().front());
  return extend(window, k_min, k_max, [&](int k) { return render_attractor(base, compose(power(s, k), pre), window); });
}

RasterSet discrete_spiral_Q(const Similarityd& s, const HPolytope& rect, int i_min, int i_max, double r,
                            const RasterWindow& window) {
  require_2d(window, "discrete_spiral_Q");
  if (!is_bounded(rect)) throw Error(ErrorKind::InvalidArgument, "rect must be bounded");
  if (i_min > i_max) throw Error(ErrorKind::InvalidArgument, "empty copy range");
  auto copy = [&](int i) { return rasterize_polytope(apply(power(s, i), rect), window); };
  RasterSet q0(window, BorderPolicy::Outside);
  for (int i = i_min; i <= i_max; ++i) paint_polytope(q0, apply(power(s, i), rect));
  q0.set_valid_margin(std::max(truncation_margin(q0, copy(i_max + 1)), truncation_margin(q0, copy(i_min - 1))));
  require_some_valid(q0);
  return erode_raster(q0, r);
}

RasterSet plaid(int k, const std::vector<double>& angles, bool radial, const RasterWindow& window) {
  require_2d(window, "plaid");
  if (k < 0 || k > 5) throw Error(ErrorKind::InvalidArgument, "plaid needs 0 <= k <= 5");
  // |<p,u>| and |p| never exceed the corner radius, which must stay inside the truncation-safe range.
  const double limit = static_cast<double>(safe_window(k)) - 1;
  if (corner_radius(window) >= limit) throw Error(ErrorKind::WindowTooSmall, "window exceeds the safe range of Y_k");
  std::vector<double> a;
  for (auto v : subset_sums(k)) a.push_back(static_cast<double>(v));
  auto in_y = [&](double t) {
    const auto it = std::upper_bound(a.begin(), a.end(), t - 1);
    return it != a.end() && *it < t + 1;
  };
  std::vector<std::pair<double, double>> dirs;
  for (double t : angles) dirs.emplace_back(std::cos(t), std::sin(t));
  return rasterize(window, BorderPolicy::Outside, [&](const double* x) {
    for (const auto& [c, s] : dirs)
      if (in_y(c * x[0] + s * x[1])) return true;
    return radial && in_y(std::hypot(x[0], x[1]));
  });
}

RasterSet si_from_resilient(const RasterSet& x, const Similarityd& s, int k_max) {
  require_expanding(s);
  if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 1");
  RasterSet acc = resample(x, power(s, -1));
  for (int k = 2; k <= k_max; ++k) acc = unite(acc, resample(x, power(s, -k)));
  return acc;
}

RasterSet resilient_from_si(const RasterSet& w, const Similarityd& s, double r_prime) {
  require_expanding(s);
  return erode_raster(w, r_prime);
}

RasterSet koch_unbounded(const RasterWindow& window) {
  require_2d(window, "koch_unbounded");
  const IFS k = koch_ifs();
  Matd mirror(2, 2);
  mirror << -1, 0, 0, 1;
  const Similarityd flip(1.0, mirror, Vecd::Zero(2));
  const auto [k_min, k_max] = auto_k_range(window, 3.0, 1.0);
  const RasterSet right = scale_invariant_extension(k, Similarityd::identity(2), k_min, k_max, window);
  const RasterSet left = scale_invariant_extension(k, flip, k_min, k_max, window);
  return unite(right, left);
}

RasterSet koch_resilient(const RasterWindow& window, double r_prime) {
  const RasterSet curve = koch_unbounded(window);
  const RasterSet c = complement(curve);
  int count = 0;
  const auto labels = label_components(c, &count);
  // The component above the curve: seed at the top-middle pixel.
  std::array<int, 3> seed{window.dims[0] / 2, window.dims[1] - 1, 0};
  const std::int32_t label = labels[window.flat_index(seed)];
  if (label < 0) throw Error(ErrorKind::WindowTooSmall, "curve reaches the top of the window");
  const RasterSet upper = select_component(c, labels, label);
  return resilient_from_si(upper, Similarityd::homothety(Vecd::Zero(2), 3.0), r_prime);
}

RasterSet sierpinski_extension(const RasterWindow& window) {
  require_2d(window, "sierpinski_extension");
  const IFS s = sierpinski_ifs(1.0);
  const auto [k_min, k_max] = auto_k_range(window, 2.0, 1.0);
  return scale_invariant_extension(s, Similarityd::identity(2), k_min, k_max, window);
}

}  // namespace morpho
