#include <cmath>
#include <utility>
#include <vector>

#include "morpho/generators.hpp"

namespace morpho {

namespace {

void validate(const SpiralParams& p) {
  if (!(p.a > 0) || !(p.b > 0)) throw Error(ErrorKind::InvalidArgument, "spiral needs a > 0 and b > 0");
  if (!(p.theta_max > p.theta_min)) throw Error(ErrorKind::InvalidArgument, "spiral needs theta_max > theta_min");
}

// Branch and bound over t for min_t |x - c(t)| - T(t) <= 0, using a Lipschitz bound on each piece.
bool covered(const SpiralParams& p, double x, double y, double t_lo, double t_hi) {
  const double rho = std::hypot(x, y);
  // Radial pruning: the ball at t reaches radii in [a e^{bt} - T, a e^{bt} + T].
  t_lo = std::max(t_lo, std::log((rho + 1) / (p.a + 1)) / p.b);
  if (p.a > 1) {
    if (rho < 1) return false;
    t_hi = std::min(t_hi, std::log((rho - 1) / (p.a - 1)) / p.b);
  }
  if (!(t_lo <= t_hi)) return false;

  const double speed = p.a * std::sqrt(1 + p.b * p.b) + p.b;
  // |x - c(t)| >= |rho - a e^{bt}|; that bound is piecewise monotone in t, so ends and kink suffice.
  auto radial = [&](double t) { const double e = std::exp(p.b * t); return std::abs(rho - p.a * e) - (e - 1); };
  const double kink = rho > 0 ? std::log(rho / p.a) / p.b : -1e300;
  auto g = [&](double t) {
    const double e = std::exp(p.b * t);
    return std::hypot(x - p.a * e * std::cos(t), y - p.a * e * std::sin(t)) - (e - 1);
  };

  std::vector<std::pair<double, double>> stack;
  const int pieces = std::max(1, static_cast<int>(std::ceil((t_hi - t_lo) / 0.05)));
  for (int k = pieces - 1; k >= 0; --k)
    stack.emplace_back(t_lo + (t_hi - t_lo) * k / pieces, t_lo + (t_hi - t_lo) * (k + 1) / pieces);
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (a + b);
    const double gm = g(mid);
    if (gm <= 0) return true;
    const double lipschitz = speed * std::exp(p.b * b);
    if (gm - lipschitz * 0.5 * (b - a) > 0) continue;
    double floor = std::min(radial(a), radial(b));
    if (kink > a && kink < b) floor = std::min(floor, radial(kink));
    if (floor > 0) continue;
    if (b - a < 1e-12) continue;
    stack.emplace_back(mid, b);
    stack.emplace_back(a, mid);
  }
  return false;
}

}  // namespace

bool spiral_contains(const SpiralParams& p, double x, double y) {
  validate(p);
  // Balls with t < 0 have negative radius.
  return covered(p, x, y, std::max(p.theta_min, 0.0), p.theta_max);
}

RasterSet spiral_S1(const SpiralParams& p, const RasterWindow& window) {
  validate(p);
  if (window.dimension() != 2) throw Error(ErrorKind::UnsupportedDimension, "spiral_S1 is 2-D only");
  const double t0 = std::max(p.theta_min, 0.0);
  double start[2] = {p.a * std::exp(p.b * t0) * std::cos(t0), p.a * std::exp(p.b * t0) * std::sin(t0)};
  for (int a = 0; a < 2; ++a) {
    const double lo = window.origin(a);
    const double hi = lo + window.spacing * (window.dims[static_cast<std::size_t>(a)] - 1);
    if (start[a] < lo || start[a] > hi) throw Error(ErrorKind::WindowTooSmall, "spiral start lies outside the window");
  }

  RasterSet rs = rasterize(window, BorderPolicy::Outside, [&](const double* x) { return covered(p, x[0], x[1], t0, p.theta_max); });

  // One more turn of omitted balls: any pixel it would add is untrusted.
  double margin = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i]) continue;
    const double bd = window.border_distance(i);
    if (bd + 0.5 * window.spacing <= margin) continue;
    double x[2];
    window.center(i, x);
    if (covered(p, x[0], x[1], p.theta_max, p.theta_max + 2 * M_PI)) margin = bd + 0.5 * window.spacing;
  }
  rs.set_valid_margin(margin);
  return rs;
}

Similarityd spiral_sigma(const SpiralParams& p, double r) {
  validate(p);
  if (!(r >= 0)) throw Error(ErrorKind::InvalidRadius, "radius must be >= 0");
  return Similarityd::spiral2d(Vecd::Zero(2), 1 + r, std::log1p(r) / p.b);
}

}  // namespace morpho
