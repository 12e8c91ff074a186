#pragma once

#include <array>
#include <vector>

#include "morpho/convex.hpp"
#include "morpho/raster.hpp"

namespace morpho {

// ---- convex examples ----

HPolytope regular_polygon(int sides, double circumradius, const Vecd& center = Vecd::Zero(2));
/// Triangle with the given vertex angles whose incircle is centered at the origin.
HPolytope triangle(const std::array<double, 3>& angles, double inradius);
HPolytope axis_box(const Vecd& lo, const Vecd& hi);

/// Four-plane roof in R^3; gamma13 / gamma24 are the angles between each outward normal and the vertical.
struct TentParams {
  double gamma13 = 0.4;
  double gamma24 = 0.7;
  double inradius = 1.0;
};

/// Unequal angles give X1 (all planes tangent to the ball of the given radius about the origin).
/// Equal angles give X4, whose second pair of planes sits twice as far out.
HPolytope tent(const TentParams& params);

struct TentStages {
  HPolytope x1, x2, x3;
  double radius = 0;
};

/// X1, X2 = e_R(X1), X3 = e_R(X2) with R the inscribed radius of X1.
TentStages tent_pipeline(const TentParams& params);

// ---- iterated function systems ----

class IFS {
 public:
  explicit IFS(std::vector<Similarityd> maps);
  const std::vector<Similarityd>& maps() const { return maps_; }
  std::vector<double> ratio_list() const;
  Eigen::Index dimension() const { return maps_.front().dimension(); }
  /// A ball mapped into itself by every map.
  Balld invariant_ball() const;

 private:
  std::vector<Similarityd> maps_;
};

/// Half-scalings toward (0,0), (side,0), (side/2, side*sqrt(3)/2).
IFS sierpinski_ifs(double side = 1.0);
/// Four third-scalings building the Koch curve over [0, 1] x {0}.
IFS koch_ifs();

double similarity_dimension(const std::vector<double>& ratios);

/// Points f_w(c) for all words |w| = depth, c the invariant-ball center, one pixel each.
RasterSet ifs_invariant(const IFS& ifs, int depth, const RasterWindow& window);

/// pre(K) rendered adaptively: words are refined until their image ball is below a quarter pixel.
/// Subtrees whose image ball misses the window are skipped.
RasterSet render_attractor(const IFS& ifs, const Similarityd& pre, const RasterWindow& window,
                           BorderPolicy policy = BorderPolicy::Outside);

/// Union of sigma^k(base) for k in [k_min, k_max]; base is taken to be bounded and inside the window.
RasterSet scale_invariant_extension(const RasterSet& base, const Similarityd& s, int k_min, int k_max);
RasterSet scale_invariant_extension(const HPolytope& base, const Similarityd& s, int k_min, int k_max,
                                    const RasterWindow& window);
/// IFS base with s = f_1^{-1}; pre is applied to the attractor before extending.
RasterSet scale_invariant_extension(const IFS& base, const Similarityd& pre, int k_min, int k_max,
                                    const RasterWindow& window);

// ---- spirals ----

struct SpiralParams {
  double a = 1.0;
  double b = 0.15;
  double theta_min = 0.0;
  double theta_max = 26.0;
};

/// Exact membership in the union of closed balls of radius e^{b t} - 1 at a e^{b t} (cos t, sin t).
bool spiral_contains(const SpiralParams& p, double x, double y);
RasterSet spiral_S1(const SpiralParams& p, const RasterWindow& window);
/// Predicted similarity for erosion radius r: scale 1 + r, rotation ln(1 + r) / b about the origin.
Similarityd spiral_sigma(const SpiralParams& p, double r);

RasterSet rasterize_polytope(const HPolytope& p, const RasterWindow& window,
                             BorderPolicy policy = BorderPolicy::Outside);

/// Q_r = e_r(union of s^i(rect), i in [i_min, i_max]).
RasterSet discrete_spiral_Q(const Similarityd& s, const HPolytope& rect, int i_min, int i_max, double r,
                            const RasterWindow& window);

/// Strip families {<p, u(angle)> in Y_k} for each angle, plus {|p| in Y_k} when radial is set.
RasterSet plaid(int k, const std::vector<double>& angles, bool radial, const RasterWindow& window);

// ---- resilient <-> scale-invariant ----

RasterSet si_from_resilient(const RasterSet& x, const Similarityd& s, int k_max);
RasterSet resilient_from_si(const RasterSet& w, const Similarityd& s, double r_prime);

/// Open-set-condition check for a user supplied U (union of open convex polygons).
bool osc_check(const IFS& ifs, const std::vector<HPolytope>& u, int resolution = 2048);

/// The unbounded Koch curve: union of 3^k (K and its mirror image across the y-axis).
RasterSet koch_unbounded(const RasterWindow& window);
/// Upper complementary component of the unbounded Koch curve, eroded by r_prime.
RasterSet koch_resilient(const RasterWindow& window, double r_prime);
/// Scale-invariant Sierpinski extension with s = f_1^{-1} (scaling by 2 about the origin).
RasterSet sierpinski_extension(const RasterWindow& window);

}  // namespace morpho
