#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "morpho/geometry.hpp"
#include "morpho/parallel.hpp"

namespace morpho {

enum class BorderPolicy { Inside, Outside };
enum class Phase { Set, Complement };

const char* to_string(BorderPolicy p);

/// Pixel centers origin + spacing * index; axis 0 varies fastest in flat indices.
struct RasterWindow {
  Vecd origin;
  double spacing = 1;
  std::vector<int> dims;

  RasterWindow() = default;
  RasterWindow(Vecd origin, double spacing, std::vector<int> dims);
  /// Window of the given dims whose pixel grid is symmetric about center.
  static RasterWindow centered(const Vecd& center, double spacing, std::vector<int> dims);

  int dimension() const { return static_cast<int>(dims.size()); }
  std::size_t size() const;
  std::array<std::size_t, 3> strides() const;
  std::array<int, 3> multi_index(std::size_t flat) const;
  std::size_t flat_index(const std::array<int, 3>& idx) const;
  void center(std::size_t flat, double* out) const;
  Vecd center(std::size_t flat) const;
  /// Distance from the pixel center to the window border in world units.
  double border_distance(std::size_t flat) const;
  /// Half of the smallest window extent.
  double half_extent() const;
  bool operator==(const RasterWindow& o) const;
};

class RasterSet {
 public:
  RasterSet() = default;
  explicit RasterSet(RasterWindow window, BorderPolicy policy = BorderPolicy::Outside, double valid_margin = 0);

  const RasterWindow& window() const { return window_; }
  int dimension() const { return window_.dimension(); }
  const std::vector<int>& dims() const { return window_.dims; }
  double spacing() const { return window_.spacing; }
  std::size_t size() const { return bits_.size(); }

  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::vector<std::uint8_t>& bits() { return bits_; }

  BorderPolicy border_policy() const { return policy_; }
  void set_border_policy(BorderPolicy p) { policy_ = p; }
  double valid_margin() const { return margin_; }
  void set_valid_margin(double m) { margin_ = m; }

  bool valid(std::size_t i) const { return window_.border_distance(i) >= margin_; }
  std::size_t count() const;
  std::size_t valid_count() const;

  bool operator==(const RasterSet& o) const {
    return window_ == o.window_ && policy_ == o.policy_ && margin_ == o.margin_ && bits_ == o.bits_;
  }

 private:
  RasterWindow window_;
  BorderPolicy policy_ = BorderPolicy::Outside;
  double margin_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Fills pixels whose center satisfies f(const double* x).
template <typename F>
RasterSet rasterize(const RasterWindow& w, BorderPolicy policy, F&& f) {
  RasterSet rs(w, policy);
  detail::parallel_for(rs.size(), [&](std::size_t b, std::size_t e) {
    double x[3] = {0, 0, 0};
    for (std::size_t i = b; i < e; ++i) {
      w.center(i, x);
      rs.bits()[i] = f(static_cast<const double*>(x)) ? 1 : 0;
    }
  }, 4096);
  return rs;
}

RasterSet complement(const RasterSet& rs);
RasterSet unite(const RasterSet& a, const RasterSet& b);
RasterSet intersect(const RasterSet& a, const RasterSet& b);

struct DistanceField {
  static constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();
  RasterWindow window;
  /// Squared distances in pixel units; kInf when the phase is absent.
  std::vector<std::int32_t> squared;

  double at(std::size_t i) const {
    return squared[i] == kInf ? std::numeric_limits<double>::infinity()
                              : std::sqrt(static_cast<double>(squared[i])) * window.spacing;
  }
};

/// Exact distance from each pixel center to the nearest pixel of the phase.
/// With use_border the layer just outside the window counts as the policy's phase.
DistanceField edt(const RasterSet& rs, Phase phase, bool use_border = true);

namespace detail {
/// min over q of |x - q|^2 + f(q) in pixel units, separably; +inf entries are not sites.
std::vector<double> squared_envelope(const RasterWindow& w, std::vector<double> f);
}  // namespace detail

RasterSet erode_raster(const RasterSet& rs, double r);
RasterSet expand_raster(const RasterSet& rs, double r);
RasterSet opening(const RasterSet& rs, double r);

/// Largest radius rho (up to r_max) such that the complement is a union of balls of radius >= rho.
/// Balls may not hold a set pixel center inside; their centers lie on a lattice three times finer
/// than the pixels. tol is the bisection width.
struct BallConvexity {
  double value = 0;
  /// value == r_max and the test still passed there.
  bool saturated = false;
};

BallConvexity ball_convexity(const RasterSet& rs, double r_max, double tol);

double hausdorff(const RasterSet& a, const RasterSet& b);
RasterSet resample(const RasterSet& rs, const Similarityd& s);

struct RasterVerification {
  bool passed = false;
  double hausdorff = 0;
  double tolerance = 0;
  double spacing = 0;
  std::size_t valid_area = 0;
};

RasterVerification verify_resilience_raster(const RasterSet& rs, double r, const Similarityd& s,
                                            double tol_pixels = 2.0);

struct HomothetyEstimate {
  Similarityd sigma;
  double residual = 0;
};

HomothetyEstimate estimate_homothety(const RasterSet& a, const RasterSet& b);

/// 2n-connected components of the set; returns labels (-1 off the set) and the count.
std::vector<std::int32_t> label_components(const RasterSet& rs, int* count);
RasterSet select_component(const RasterSet& rs, const std::vector<std::int32_t>& labels, std::int32_t label);

}  // namespace morpho
