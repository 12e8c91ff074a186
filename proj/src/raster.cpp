#include "morpho/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace morpho {

namespace {

constexpr int kMaxSide = 16384;

void require_same_window(const RasterSet& a, const RasterSet& b) {
  if (!(a.window() == b.window())) throw Error(ErrorKind::DimensionMismatch, "raster windows differ");
}

// Squared radius threshold in pixel units; distances exactly r count as "not within r".
double threshold(double r, double h) { return (r / h) * (r / h) * (1.0 - 1e-12); }

// Compact affine map for hot loops.
struct Affine {
  int n = 0;
  double m[3][3] = {};
  double b[3] = {};
  explicit Affine(const Similarityd& s) : n(static_cast<int>(s.dimension())) {
    const Matd lin = s.linear();
    for (int i = 0; i < n; ++i) {
      b[i] = s.offset()(i);
      for (int j = 0; j < n; ++j) m[i][j] = lin(i, j);
    }
  }
  void operator()(const double* x, double* y) const {
    for (int i = 0; i < n; ++i) {
      double acc = b[i];
      for (int j = 0; j < n; ++j) acc += m[i][j] * x[j];
      y[i] = acc;
    }
  }
};

// Nearest pixel of a world point; false when it falls outside the window.
bool locate(const RasterWindow& w, const double* x, std::size_t* flat) {
  const auto st = w.strides();
  std::size_t f = 0;
  for (int a = 0; a < w.dimension(); ++a) {
    const double t = (x[a] - w.origin(a)) / w.spacing;
    const long idx = std::lround(t);
    if (idx < 0 || idx >= w.dims[static_cast<std::size_t>(a)]) return false;
    f += static_cast<std::size_t>(idx) * st[static_cast<std::size_t>(a)];
  }
  *flat = f;
  return true;
}

// Pixels whose distance to the phase is below r.
std::vector<std::uint8_t> within(const DistanceField& d, double r) {
  const double t = threshold(r, d.window.spacing);
  std::vector<std::uint8_t> out(d.squared.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = d.squared[i] != DistanceField::kInf && static_cast<double>(d.squared[i]) < t;
  return out;
}

std::vector<std::size_t> boundary_pixels(const RasterSet& rs) {
  const auto st = rs.window().strides();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (!rs[i]) continue;
    const auto idx = rs.window().multi_index(i);
    bool edge = false;
    for (int a = 0; a < rs.dimension() && !edge; ++a) {
      const int n = rs.dims()[static_cast<std::size_t>(a)];
      const std::size_t s = st[static_cast<std::size_t>(a)];
      if (idx[static_cast<std::size_t>(a)] == 0 || idx[static_cast<std::size_t>(a)] == n - 1) edge = true;
      else if (!rs[i - s] || !rs[i + s]) edge = true;
    }
    if (edge) out.push_back(i);
  }
  return out;
}

}  // namespace

const char* to_string(BorderPolicy p) { return p == BorderPolicy::Inside ? "inside" : "outside"; }

RasterWindow::RasterWindow(Vecd origin_, double spacing_, std::vector<int> dims_)
    : origin(std::move(origin_)), spacing(spacing_), dims(std::move(dims_)) {
  if (dims.empty() || dims.size() > 3) throw Error(ErrorKind::UnsupportedDimension, "rasters support 1 to 3 axes");
  if (origin.size() != static_cast<Eigen::Index>(dims.size()))
    throw Error(ErrorKind::DimensionMismatch, "raster origin and dims disagree");
  if (!(spacing > 0) || !std::isfinite(spacing)) throw Error(ErrorKind::InvalidArgument, "spacing must be > 0");
  for (int d : dims)
    if (d < 1 || d > kMaxSide) throw Error(ErrorKind::InvalidArgument, "raster dims must be in [1, 16384]");
}

RasterWindow RasterWindow::centered(const Vecd& c, double h, std::vector<int> dims) {
  Vecd origin(c.size());
  for (Eigen::Index a = 0; a < c.size(); ++a) origin(a) = c(a) - 0.5 * h * (dims[static_cast<std::size_t>(a)] - 1);
  return RasterWindow(origin, h, std::move(dims));
}

std::size_t RasterWindow::size() const {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

std::array<std::size_t, 3> RasterWindow::strides() const {
  std::array<std::size_t, 3> s{1, 1, 1};
  for (std::size_t a = 1; a < dims.size(); ++a) s[a] = s[a - 1] * static_cast<std::size_t>(dims[a - 1]);
  return s;
}

std::array<int, 3> RasterWindow::multi_index(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t a = 0; a < dims.size(); ++a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(dims[a]));
    flat /= static_cast<std::size_t>(dims[a]);
  }
  return idx;
}

std::size_t RasterWindow::flat_index(const std::array<int, 3>& idx) const {
  const auto st = strides();
  std::size_t f = 0;
  for (std::size_t a = 0; a < dims.size(); ++a) f += static_cast<std::size_t>(idx[a]) * st[a];
  return f;
}

void RasterWindow::center(std::size_t flat, double* out) const {
  for (std::size_t a = 0; a < dims.size(); ++a) {
    const auto i = flat % static_cast<std::size_t>(dims[a]);
    flat /= static_cast<std::size_t>(dims[a]);
    out[a] = origin(static_cast<Eigen::Index>(a)) + spacing * static_cast<double>(i);
  }
}

Vecd RasterWindow::center(std::size_t flat) const {
  double x[3];
  center(flat, x);
  return Eigen::Map<Vecd>(x, dimension());
}

double RasterWindow::border_distance(std::size_t flat) const {
  int best = kMaxSide;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    const int i = static_cast<int>(flat % static_cast<std::size_t>(dims[a]));
    flat /= static_cast<std::size_t>(dims[a]);
    best = std::min(best, std::min(i, dims[a] - 1 - i));
  }
  return (best + 0.5) * spacing;
}

double RasterWindow::half_extent() const {
  const int smallest = *std::min_element(dims.begin(), dims.end());
  return 0.5 * smallest * spacing;
}

bool RasterWindow::operator==(const RasterWindow& o) const {
  return dims == o.dims && spacing == o.spacing && origin.size() == o.origin.size() && origin == o.origin;
}

RasterSet::RasterSet(RasterWindow window, BorderPolicy policy, double valid_margin)
    : window_(std::move(window)), policy_(policy), margin_(valid_margin), bits_(window_.size(), 0) {
  if (!(valid_margin >= 0)) throw Error(ErrorKind::InvalidArgument, "valid margin must be >= 0");
}

std::size_t RasterSet::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

std::size_t RasterSet::valid_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < size(); ++i) n += valid(i) ? 1 : 0;
  return n;
}

RasterSet complement(const RasterSet& rs) {
  RasterSet out(rs.window(),
                rs.border_policy() == BorderPolicy::Inside ? BorderPolicy::Outside : BorderPolicy::Inside,
                rs.valid_margin());
  for (std::size_t i = 0; i < rs.size(); ++i) out.bits()[i] = rs.bits()[i] ? 0 : 1;
  return out;
}

RasterSet unite(const RasterSet& a, const RasterSet& b) {
  require_same_window(a, b);
  const bool inside = a.border_policy() == BorderPolicy::Inside || b.border_policy() == BorderPolicy::Inside;
  RasterSet out(a.window(), inside ? BorderPolicy::Inside : BorderPolicy::Outside,
                std::max(a.valid_margin(), b.valid_margin()));
  for (std::size_t i = 0; i < a.size(); ++i) out.bits()[i] = a.bits()[i] | b.bits()[i];
  return out;
}

RasterSet intersect(const RasterSet& a, const RasterSet& b) {
  require_same_window(a, b);
  const bool inside = a.border_policy() == BorderPolicy::Inside && b.border_policy() == BorderPolicy::Inside;
  RasterSet out(a.window(), inside ? BorderPolicy::Inside : BorderPolicy::Outside,
                std::max(a.valid_margin(), b.valid_margin()));
  for (std::size_t i = 0; i < a.size(); ++i) out.bits()[i] = a.bits()[i] & b.bits()[i];
  return out;
}

RasterSet erode_raster(const RasterSet& rs, double r) {
  if (!(r >= 0)) throw Error(ErrorKind::InvalidRadius, "erosion radius must be >= 0");
  RasterSet out(rs.window(), rs.border_policy(), rs.valid_margin() + r);
  if (r == 0) {
    out.bits() = rs.bits();
    return out;
  }
  const auto near = within(edt(rs, Phase::Complement), r);
  for (std::size_t i = 0; i < rs.size(); ++i) out.bits()[i] = rs.bits()[i] && !near[i];
  return out;
}

RasterSet expand_raster(const RasterSet& rs, double r) {
  if (!(r >= 0)) throw Error(ErrorKind::InvalidRadius, "expansion radius must be >= 0");
  RasterSet out(rs.window(), rs.border_policy(), rs.valid_margin() + r);
  if (r == 0) {
    out.bits() = rs.bits();
    return out;
  }
  const auto near = within(edt(rs, Phase::Set), r);
  for (std::size_t i = 0; i < rs.size(); ++i) out.bits()[i] = rs.bits()[i] || near[i];
  return out;
}

RasterSet opening(const RasterSet& rs, double r) { return expand_raster(erode_raster(rs, r), r); }

BallConvexity ball_convexity(const RasterSet& rs, double r_max, double tol) {
  const RasterWindow& w = rs.window();
  const double h = rs.spacing();
  const double margin = rs.valid_margin();
  const double limit = w.half_extent() - margin;
  r_max = std::min(r_max, std::max(0.0, limit));
  tol = std::max(tol, 1e-3 * h);
  const double inf = std::numeric_limits<double>::infinity();
  const int nd = w.dimension();

  // Ball centers range over a lattice kSub times finer than the pixels; pixel centers sit on it.
  constexpr int kSub = 3;
  const double fh = h / kSub;
  std::vector<int> fdims(w.dims);
  for (int& n : fdims) n *= kSub;
  const RasterWindow fine(w.origin.array() - (h / 2 - fh / 2), fh, fdims);
  auto fine_of = [&](std::size_t i) {
    auto idx = w.multi_index(i);
    for (int a = 0; a < nd; ++a) idx[static_cast<std::size_t>(a)] = kSub * idx[static_cast<std::size_t>(a)] + kSub / 2;
    return fine.flat_index(idx);
  };

  // Squared distance (fine units) from each lattice point to the nearest set pixel center.
  std::vector<double> radius2(fine.size(), inf);
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs[i]) radius2[fine_of(i)] = 0;
  radius2 = detail::squared_envelope(fine, std::move(radius2));
  const bool ring = rs.border_policy() == BorderPolicy::Inside;
  for (std::size_t f = 0; f < fine.size(); ++f) {
    double r2 = radius2[f];
    if (ring) {
      const auto idx = fine.multi_index(f);
      for (int a = 0; a < nd; ++a) {
        const int q = idx[static_cast<std::size_t>(a)], n = fdims[static_cast<std::size_t>(a)];
        const double t = std::min(q + kSub - kSub / 2, n + kSub / 2 - q);
        r2 = std::min(r2, t * t);
      }
    }
    if (margin > 0) {
      const double cap = std::max(0.0, (fine.border_distance(f) - margin) / fh);
      r2 = std::min(r2, cap * cap);
    }
    radius2[f] = r2;
  }

  auto passes = [&](double rho) {
    if (rho <= 0) return true;
    const double rho2 = (rho / fh) * (rho / fh);
    std::vector<double> f(fine.size(), inf);
    for (std::size_t i = 0; i < fine.size(); ++i)
      if (radius2[i] >= rho2) f[i] = radius2[i] == inf ? -1e18 : -radius2[i];
    const std::vector<double> env = detail::squared_envelope(fine, std::move(f));
    const double check = margin + 2 * rho + h;
    for (std::size_t i = 0; i < rs.size(); ++i)
      if (!rs[i] && w.border_distance(i) >= check && !(env[fine_of(i)] <= 1e-9)) return false;
    return true;
  };

  if (passes(r_max)) return {r_max, true};
  double lo = 0, hi = r_max;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? lo : hi) = mid;
  }
  return {lo, false};
}

double hausdorff(const RasterSet& a, const RasterSet& b) {
  require_same_window(a, b);
  const double margin = std::max(a.valid_margin(), b.valid_margin());
  const auto& w = a.window();
  bool any_a = false, any_b = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (w.border_distance(i) < margin) continue;
    any_a |= a[i];
    any_b |= b[i];
  }
  if (!any_a || !any_b) throw Error(ErrorKind::EmptyInput, "a set is empty on the shared valid region");
  const DistanceField da = edt(a, Phase::Set, false);
  const DistanceField db = edt(b, Phase::Set, false);
  std::int64_t worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (w.border_distance(i) < margin) continue;
    if (a[i]) worst = std::max<std::int64_t>(worst, db.squared[i]);
    if (b[i]) worst = std::max<std::int64_t>(worst, da.squared[i]);
  }
  return std::sqrt(static_cast<double>(worst)) * w.spacing;
}

RasterSet resample(const RasterSet& rs, const Similarityd& s) {
  const RasterWindow& w = rs.window();
  if (s.dimension() != w.dimension()) throw Error(ErrorKind::DimensionMismatch, "similarity and raster differ");
  const Affine inv(invert(s));
  const int nd = w.dimension();
  const int samples = 1 << nd;
  const bool outside_value = rs.border_policy() == BorderPolicy::Inside;
  RasterSet out(w, rs.border_policy());
  std::vector<std::uint8_t> untrusted(rs.size(), 0);

  detail::parallel_for(rs.size(), [&](std::size_t b, std::size_t e) {
    double y[3], yy[3], x[3];
    for (std::size_t i = b; i < e; ++i) {
      w.center(i, y);
      std::size_t src;
      inv(y, x);
      const bool center_in = locate(w, x, &src);
      const bool center_val = center_in ? rs[src] : outside_value;
      untrusted[i] = !center_in || !rs.valid(src);
      int votes = 0;
      for (int k = 0; k < samples; ++k) {
        for (int a = 0; a < nd; ++a) yy[a] = y[a] + ((k >> a) & 1 ? 0.25 : -0.25) * w.spacing;
        inv(yy, x);
        votes += locate(w, x, &src) ? rs[src] : outside_value;
      }
      const bool v = 2 * votes > samples || (2 * votes == samples && center_val);
      out.bits()[i] = v ? 1 : 0;
    }
  }, 4096);

  double margin = 0;
  bool any_trusted = false;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (untrusted[i]) margin = std::max(margin, w.border_distance(i) + 0.5 * w.spacing);
  }
  for (std::size_t i = 0; i < rs.size() && !any_trusted; ++i) any_trusted = w.border_distance(i) >= margin;
  if (!any_trusted) throw Error(ErrorKind::EmptyOverlap, "image of the valid region misses the window");
  out.set_valid_margin(margin);
  return out;
}

RasterVerification verify_resilience_raster(const RasterSet& rs, double r, const Similarityd& s,
                                            double tol_pixels) {
  if (!(tol_pixels >= 1)) throw Error(ErrorKind::InvalidArgument, "tolerance must be at least one pixel");
  const RasterSet eroded = erode_raster(rs, r);
  const RasterSet image = resample(rs, s);
  RasterVerification rep;
  rep.spacing = rs.spacing();
  rep.tolerance = tol_pixels * rs.spacing();
  rep.hausdorff = hausdorff(eroded, image);
  const double margin = std::max(eroded.valid_margin(), image.valid_margin());
  for (std::size_t i = 0; i < rs.size(); ++i) rep.valid_area += rs.window().border_distance(i) >= margin ? 1 : 0;
  rep.passed = rep.hausdorff <= rep.tolerance * (1 + 1e-12);
  return rep;
}

HomothetyEstimate estimate_homothety(const RasterSet& a, const RasterSet& b) {
  require_same_window(a, b);
  if (a.dimension() != 2) throw Error(ErrorKind::UnsupportedDimension, "estimate_homothety is 2-D only");
  const auto& w = a.window();
  Vecd ca = Vecd::Zero(2), cb = Vecd::Zero(2);
  double na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]) ca += w.center(i), na += 1;
    if (b[i]) cb += w.center(i), nb += 1;
  }
  if (na == 0 || nb == 0) throw Error(ErrorKind::EmptyInput, "estimate_homothety needs two nonempty sets");
  ca /= na;
  cb /= nb;
  const double scale = std::sqrt(nb / na);

  const DistanceField da = edt(a, Phase::Set, false);
  const DistanceField db = edt(b, Phase::Set, false);
  const auto ba = boundary_pixels(a);
  const auto bb = boundary_pixels(b);

  // Distance from a world point to the set behind field d, allowing points outside the window.
  auto lookup = [&](const DistanceField& d, const double* x) {
    double clamped[2];
    double extra = 0;
    for (int k = 0; k < 2; ++k) {
      const double lo = w.origin(k);
      const double hi = w.origin(k) + w.spacing * (w.dims[static_cast<std::size_t>(k)] - 1);
      clamped[k] = std::clamp(x[k], lo, hi);
      extra += (x[k] - clamped[k]) * (x[k] - clamped[k]);
    }
    std::size_t f = 0;
    locate(w, clamped, &f);
    return d.at(f) + std::sqrt(extra);
  };

  HomothetyEstimate best{Similarityd::identity(2), std::numeric_limits<double>::infinity()};
  for (int k = 0; k < 720; ++k) {
    const double theta = 2.0 * M_PI * k / 720.0;
    const Similarityd sig = Similarityd::spiral2d(Vecd::Zero(2), scale, theta);
    const Similarityd s = compose(Similarityd::translation(cb), compose(sig, Similarityd::translation(-ca)));
    const Affine fwd(s);
    const Affine bwd(invert(s));
    double worst = 0;
    double x[2], y[2];
    for (std::size_t i : ba) {
      w.center(i, x);
      fwd(x, y);
      worst = std::max(worst, lookup(db, y));
      if (worst >= best.residual) break;
    }
    for (std::size_t i : bb) {
      if (worst >= best.residual) break;
      w.center(i, y);
      bwd(y, x);
      worst = std::max(worst, scale * lookup(da, x));
    }
    if (worst < best.residual) best = {s, worst};
  }
  return best;
}

std::vector<std::int32_t> label_components(const RasterSet& rs, int* count) {
  std::vector<std::int32_t> labels(rs.size(), -1);
  const auto st = rs.window().strides();
  std::int32_t next = 0;
  std::deque<std::size_t> queue;
  for (std::size_t seed = 0; seed < rs.size(); ++seed) {
    if (!rs[seed] || labels[seed] >= 0) continue;
    labels[seed] = next;
    queue.push_back(seed);
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      const auto idx = rs.window().multi_index(i);
      for (int a = 0; a < rs.dimension(); ++a) {
        const std::size_t s = st[static_cast<std::size_t>(a)];
        const int n = rs.dims()[static_cast<std::size_t>(a)];
        if (idx[static_cast<std::size_t>(a)] > 0 && rs[i - s] && labels[i - s] < 0) {
          labels[i - s] = next;
          queue.push_back(i - s);
        }
        if (idx[static_cast<std::size_t>(a)] < n - 1 && rs[i + s] && labels[i + s] < 0) {
          labels[i + s] = next;
          queue.push_back(i + s);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return labels;
}

RasterSet select_component(const RasterSet& rs, const std::vector<std::int32_t>& labels, std::int32_t label) {
  RasterSet out(rs.window(), rs.border_policy(), rs.valid_margin());
  for (std::size_t i = 0; i < rs.size(); ++i) out.bits()[i] = labels[i] == label ? 1 : 0;
  return out;
}

}  // namespace morpho
