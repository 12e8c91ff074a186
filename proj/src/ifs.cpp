#include <cmath>
#include <vector>

#include "morpho/generators.hpp"
#include "morpho/simplex.hpp"

namespace morpho {

namespace {

struct Aff {
  int n = 0;
  double m[3][3] = {};
  double b[3] = {};
  double scale = 1;

  explicit Aff(const Similarityd& s) : n(static_cast<int>(s.dimension())), scale(s.scale()) {
    const Matd lin = s.linear();
    for (int i = 0; i < n; ++i) {
      b[i] = s.offset()(i);
      for (int j = 0; j < n; ++j) m[i][j] = lin(i, j);
    }
  }

  // this after g
  Aff then(const Aff& g) const {
    Aff out = *this;
    out.scale = scale * g.scale;
    for (int i = 0; i < n; ++i) {
      double acc = b[i];
      for (int j = 0; j < n; ++j) acc += m[i][j] * g.b[j];
      out.b[i] = acc;
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int k = 0; k < n; ++k) s += m[i][k] * g.m[k][j];
        out.m[i][j] = s;
      }
    }
    return out;
  }

  void apply(const double* x, double* y) const {
    for (int i = 0; i < n; ++i) {
      double acc = b[i];
      for (int j = 0; j < n; ++j) acc += m[i][j] * x[j];
      y[i] = acc;
    }
  }
};

bool plot(RasterSet& rs, const double* x) {
  const RasterWindow& w = rs.window();
  const auto st = w.strides();
  std::size_t f = 0;
  for (int a = 0; a < w.dimension(); ++a) {
    const long idx = std::lround((x[a] - w.origin(a)) / w.spacing);
    if (idx < 0 || idx >= w.dims[static_cast<std::size_t>(a)]) return false;
    f += static_cast<std::size_t>(idx) * st[static_cast<std::size_t>(a)];
  }
  rs.bits()[f] = 1;
  return true;
}

// Distance from x to the window's pixel-center box, in world units.
double distance_to_window(const RasterWindow& w, const double* x) {
  double s = 0;
  for (int a = 0; a < w.dimension(); ++a) {
    const double lo = w.origin(a);
    const double hi = lo + w.spacing * (w.dims[static_cast<std::size_t>(a)] - 1);
    const double d = x[a] < lo ? lo - x[a] : (x[a] > hi ? x[a] - hi : 0.0);
    s += d * d;
  }
  return std::sqrt(s);
}

void require_window_dimension(const IFS& ifs, const RasterWindow& w) {
  if (ifs.dimension() != w.dimension()) throw Error(ErrorKind::DimensionMismatch, "IFS and window dimensions differ");
}

}  // namespace

IFS::IFS(std::vector<Similarityd> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw Error(ErrorKind::InvalidArgument, "an IFS needs at least one map");
  for (const auto& f : maps_) {
    if (f.dimension() != maps_.front().dimension())
      throw Error(ErrorKind::DimensionMismatch, "IFS maps of differing dimension");
    if (!(f.scale() < 1)) throw Error(ErrorKind::BadRatio, "IFS maps must contract (scale < 1)");
  }
}

std::vector<double> IFS::ratio_list() const {
  std::vector<double> r;
  for (const auto& f : maps_) r.push_back(f.scale());
  return r;
}

Balld IFS::invariant_ball() const {
  Vecd c = Vecd::Zero(dimension());
  for (const auto& f : maps_) c += *fixed_point(f);
  c /= static_cast<double>(maps_.size());
  double rho = 0;
  for (const auto& f : maps_) rho = std::max(rho, (f(c) - c).norm() / (1 - f.scale()));
  return {c, rho, Openness::Closed};
}

IFS sierpinski_ifs(double side) {
  const Matd id = Matd::Identity(2, 2);
  std::vector<Similarityd> maps;
  for (const Vecd& v : {Vecd(Eigen::Vector2d(0, 0)), Vecd(Eigen::Vector2d(side, 0)),
                        Vecd(Eigen::Vector2d(side / 2, side * std::sqrt(3.0) / 2))})
    maps.emplace_back(0.5, id, 0.5 * v);
  return IFS(std::move(maps));
}

IFS koch_ifs() {
  const double third = 1.0 / 3.0;
  auto rot = [](double a) {
    Matd q(2, 2);
    q << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return q;
  };
  std::vector<Similarityd> maps;
  maps.emplace_back(third, rot(0), Vecd(Eigen::Vector2d(0, 0)));
  maps.emplace_back(third, rot(M_PI / 3), Vecd(Eigen::Vector2d(third, 0)));
  maps.emplace_back(third, rot(-M_PI / 3), Vecd(Eigen::Vector2d(0.5, std::sqrt(3.0) / 6)));
  maps.emplace_back(third, rot(0), Vecd(Eigen::Vector2d(2 * third, 0)));
  return IFS(std::move(maps));
}

double similarity_dimension(const std::vector<double>& ratios) {
  if (ratios.empty()) throw Error(ErrorKind::BadRatio, "ratio list is empty");
  for (double a : ratios)
    if (!(a > 0 && a < 1)) throw Error(ErrorKind::BadRatio, "ratios must lie in (0, 1)");
  auto f = [&](double s) {
    double sum = 0;
    for (double a : ratios) sum += std::pow(a, s);
    return sum - 1;
  };
  // f is strictly decreasing with f(0) = t - 1 >= 0.
  double lo = 0, hi = 1;
  while (f(hi) > 0) hi *= 2;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RasterSet ifs_invariant(const IFS& ifs, int depth, const RasterWindow& window) {
  require_window_dimension(ifs, window);
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  const Balld ball = ifs.invariant_ball();
  RasterSet out(window, BorderPolicy::Outside);
  std::vector<Aff> maps;
  for (const auto& f : ifs.maps()) maps.emplace_back(f);
  double c[3] = {0, 0, 0};
  for (int a = 0; a < window.dimension(); ++a) c[a] = ball.center(a);

  std::vector<std::pair<Aff, int>> stack{{Aff(Similarityd::identity(ifs.dimension())), 0}};
  double y[3];
  while (!stack.empty()) {
    auto [g, d] = stack.back();
    stack.pop_back();
    if (d == depth) {
      g.apply(c, y);
      if (!plot(out, y)) throw Error(ErrorKind::WindowTooSmall, "attractor leaves the window");
      continue;
    }
    for (const auto& f : maps) stack.emplace_back(g.then(f), d + 1);
  }
  return out;
}

RasterSet render_attractor(const IFS& ifs, const Similarityd& pre, const RasterWindow& window, BorderPolicy policy) {
  require_window_dimension(ifs, window);
  const Balld ball = ifs.invariant_ball();
  RasterSet out(window, policy);
  std::vector<Aff> maps;
  for (const auto& f : ifs.maps()) maps.emplace_back(f);
  double c[3] = {0, 0, 0};
  for (int a = 0; a < window.dimension(); ++a) c[a] = ball.center(a);
  const double h = window.spacing;

  std::vector<std::pair<Aff, int>> stack{{Aff(pre), 0}};
  double y[3];
  while (!stack.empty()) {
    auto [g, d] = stack.back();
    stack.pop_back();
    g.apply(c, y);
    const double radius = g.scale * ball.radius;
    if (distance_to_window(window, y) > radius + h) continue;
    if (radius < 0.25 * h || d >= 64) {
      plot(out, y);
      continue;
    }
    for (const auto& f : maps) stack.emplace_back(g.then(f), d + 1);
  }
  return out;
}

bool osc_check(const IFS& ifs, const std::vector<HPolytope>& u, int resolution) {
  if (ifs.dimension() != 2) throw Error(ErrorKind::UnsupportedDimension, "osc_check is 2-D only");
  if (u.empty()) throw Error(ErrorKind::InvalidArgument, "U must have at least one piece");
  // Bounding box of U.
  Vecd lo = Vecd::Constant(2, std::numeric_limits<double>::infinity());
  Vecd hi = -lo;
  for (const auto& piece : u) {
    if (piece.dimension() != 2) throw Error(ErrorKind::DimensionMismatch, "U pieces must be 2-D");
    for (int axis = 0; axis < 2; ++axis) {
      for (double sgn : {1.0, -1.0}) {
        Vecd dir = Vecd::Zero(2);
        dir(axis) = sgn;
        const lp::Result r = lp::maximize(piece.normals(), piece.offsets(), dir);
        if (r.status != lp::Status::Optimal) throw Error(ErrorKind::InvalidArgument, "U piece is empty or unbounded");
        if (sgn > 0) hi(axis) = std::max(hi(axis), r.objective);
        else lo(axis) = std::min(lo(axis), -r.objective);
      }
    }
  }
  const double extent = std::max(hi(0) - lo(0), hi(1) - lo(1));
  const double h = extent / (resolution - 1);
  const RasterWindow w(lo, h, {resolution, resolution});

  constexpr double eps = 1e-12;
  auto in_u = [&](const Vecd& x, double slack) {
    for (const auto& piece : u) {
      bool inside = true;
      for (const auto& hsp : piece.halfspaces())
        if (hsp.signed_distance(x) >= slack) inside = false;
      if (inside) return true;
    }
    return false;
  };

  std::vector<Similarityd> inverses;
  for (const auto& f : ifs.maps()) inverses.push_back(invert(f));
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vecd x = w.center(i);
    int hits = 0;
    for (const auto& inv : inverses) hits += in_u(inv(x), -eps) ? 1 : 0;
    if (hits > 1) return false;
    if (hits == 1 && !in_u(x, eps)) return false;
  }
  return true;
}

}  // namespace morpho
