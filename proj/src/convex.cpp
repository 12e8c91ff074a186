#include "morpho/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "morpho/simplex.hpp"

namespace morpho {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kMaxCondition = 1e10;

void require_radius(double r) {
  if (!(r >= 0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidRadius, "radius must be finite and >= 0");
}

double scale_of(const HPolytope& p) {
  double m = 1;
  for (const auto& h : p.halfspaces()) m = std::max(m, std::abs(h.offset()));
  return m;
}

struct LeastSquares {
  Vecd z;
  double residual = 0;
  double condition = 0;
  Matd null_space;
};

LeastSquares solve_ls(const Matd& m, const Vecd& rhs) {
  Eigen::JacobiSVD<Matd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vecd sv = svd.singularValues();
  LeastSquares out;
  Eigen::Index rank = 0;
  const double smax = sv.size() ? sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * smax) ++rank;
  out.condition = rank ? smax / sv(rank - 1) : std::numeric_limits<double>::infinity();
  Vecd z = Vecd::Zero(m.cols());
  const Matd& u = svd.matrixU();
  const Matd& v = svd.matrixV();
  for (Eigen::Index i = 0; i < rank; ++i) z += v.col(i) * (u.col(i).dot(rhs) / sv(i));
  out.z = z;
  out.residual = m.rows() ? (m * z - rhs).cwiseAbs().maxCoeff() : 0.0;
  out.null_space = v.rightCols(m.cols() - rank);
  return out;
}

// Solves <n_i, c> + sign * R = d_i.
BallFit fit_ball(const HPolytope& p, double sign, std::optional<double> tol) {
  const double t = tol.value_or(default_tolerance(p));
  const Eigen::Index n = p.dimension();
  const Eigen::Index m = static_cast<Eigen::Index>(p.size());
  Matd a(m, n + 1);
  a.leftCols(n) = p.normals();
  a.col(n).setConstant(sign);
  const Vecd d = p.offsets();

  BallFit fit;
  LeastSquares ls = solve_ls(a, d);
  fit.residual = ls.residual;
  fit.condition = ls.condition;
  if (ls.condition > kMaxCondition) {
    fit.diagnostic = "near-degenerate facet set";
    return fit;
  }
  if (ls.residual > t) {
    fit.diagnostic = "facet system inconsistent";
    return fit;
  }
  Vecd z = ls.z;
  // A null direction that moves R means the radius is free (half-spaces, wedges with a common angle).
  for (Eigen::Index k = 0; k < ls.null_space.cols(); ++k) {
    const Vecd w = ls.null_space.col(k);
    if (std::abs(w(n)) > 1e-9) {
      const double target = std::max(1.0, scale_of(p));
      if (z(n) < target) z += w * ((target - z(n)) / w(n));
      break;
    }
  }
  if (!(z(n) > t)) {
    fit.diagnostic = "no positive radius";
    return fit;
  }
  fit.ball = Balld{z.head(n), z(n), Openness::Closed};
  return fit;
}

}  // namespace

HPolytope::HPolytope(std::vector<HalfSpaced> halfspaces, bool reduced)
    : halfspaces_(std::move(halfspaces)), reduced_(reduced) {
  if (halfspaces_.empty()) throw Error(ErrorKind::InvalidArgument, "polytope needs at least one half-space");
  for (const auto& h : halfspaces_)
    if (h.dimension() != halfspaces_.front().dimension())
      throw Error(ErrorKind::DimensionMismatch, "half-spaces of differing dimension");
}

bool HPolytope::contains(const Vecd& x, double tol) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(), [&](const HalfSpaced& h) { return h.contains(x, tol); });
}

Matd HPolytope::normals() const {
  Matd n(static_cast<Eigen::Index>(size()), dimension());
  for (std::size_t i = 0; i < size(); ++i) n.row(static_cast<Eigen::Index>(i)) = halfspaces_[i].normal().transpose();
  return n;
}

Vecd HPolytope::offsets() const {
  Vecd d(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) d(static_cast<Eigen::Index>(i)) = halfspaces_[i].offset();
  return d;
}

const char* to_string(ResilienceKind kind) {
  switch (kind) {
    case ResilienceKind::Decreasing: return "decreasing";
    case ResilienceKind::Increasing: return "increasing";
    case ResilienceKind::Isometric: return "isometric";
    case ResilienceKind::None: return "none";
  }
  return "none";
}

double default_tolerance(const HPolytope& p) { return 1e-8 * scale_of(p); }

HalfSpaced erode_halfspace(const HalfSpaced& h, double r) {
  require_radius(r);
  return HalfSpaced(h.normal(), h.offset() - r);
}

HPolytope erode_polytope(const HPolytope& p, double r) {
  require_radius(r);
  std::vector<HalfSpaced> hs;
  hs.reserve(p.size());
  for (const auto& h : p.halfspaces()) hs.push_back(erode_halfspace(h, r));
  try {
    return reduce(HPolytope(std::move(hs)));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EmptySet) throw Error(ErrorKind::EmptyResult, "erosion by radius is empty");
    throw;
  }
}

HPolytope reduce(const HPolytope& p) {
  const Matd n = p.normals();
  const Vecd d = p.offsets();
  const Eigen::Index m = n.rows();
  const double scale = scale_of(p);

  if (lp::feasible_point(n, d).status == lp::Status::Infeasible)
    throw Error(ErrorKind::EmptySet, "half-space intersection is empty");

  std::vector<bool> keep(static_cast<std::size_t>(m), true);
  // Parallel duplicates: keep the tighter one.
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (!keep[static_cast<std::size_t>(j)]) continue;
      if ((n.row(i) - n.row(j)).norm() <= 1e-12) {
        if (d(i) < d(j)) keep[static_cast<std::size_t>(j)] = false;
        else keep[static_cast<std::size_t>(i)] = false;
        break;
      }
    }
  }

  for (Eigen::Index i = 0; i < m; ++i) {
    if (!keep[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> rows;
    for (Eigen::Index j = 0; j < m; ++j)
      if (keep[static_cast<std::size_t>(j)]) rows.push_back(j);
    Matd a(static_cast<Eigen::Index>(rows.size()), n.cols());
    Vecd b(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      a.row(static_cast<Eigen::Index>(k)) = n.row(rows[k]);
      // The tested constraint is relaxed so the LP stays bounded in its own direction.
      b(static_cast<Eigen::Index>(k)) = d(rows[k]) + (rows[k] == i ? 1.0 : 0.0);
    }
    const lp::Result res = lp::maximize(a, b, n.row(i).transpose());
    if (res.status == lp::Status::Optimal && res.objective <= d(i) + 1e-9 * scale)
      keep[static_cast<std::size_t>(i)] = false;
  }

  std::vector<HalfSpaced> hs;
  for (Eigen::Index i = 0; i < m; ++i)
    if (keep[static_cast<std::size_t>(i)]) hs.push_back(p.halfspaces()[static_cast<std::size_t>(i)]);
  return HPolytope(std::move(hs), true);
}

bool is_bounded(const HPolytope& p) {
  const Eigen::Index n = p.dimension();
  const Eigen::Index m = static_cast<Eigen::Index>(p.size());
  // Recession cone N u <= 0 inside the box |u_k| <= 1.
  Matd a(m + 2 * n, n);
  Vecd b(m + 2 * n);
  a.topRows(m) = p.normals();
  b.head(m).setZero();
  a.block(m, 0, n, n) = Matd::Identity(n, n);
  a.block(m + n, 0, n, n) = -Matd::Identity(n, n);
  b.tail(2 * n).setOnes();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (double sgn : {1.0, -1.0}) {
      Vecd c = Vecd::Zero(n);
      c(j) = sgn;
      const lp::Result r = lp::maximize(a, b, c);
      if (r.status != lp::Status::Optimal || r.objective > 1e-9) return false;
    }
  }
  return true;
}

HPolytope intersect(const HPolytope& a, const HPolytope& b) {
  if (a.dimension() != b.dimension()) throw Error(ErrorKind::DimensionMismatch, "polytopes of differing dimension");
  std::vector<HalfSpaced> hs = a.halfspaces();
  hs.insert(hs.end(), b.halfspaces().begin(), b.halfspaces().end());
  return reduce(HPolytope(std::move(hs)));
}

HPolytope apply(const Similarityd& s, const HPolytope& p) {
  std::vector<HalfSpaced> hs;
  hs.reserve(p.size());
  for (const auto& h : p.halfspaces()) hs.push_back(apply_to_halfspace(s, h));
  return HPolytope(std::move(hs), p.reduced());
}

BallFit fit_inscribed_ball(const HPolytope& p, std::optional<double> tol) { return fit_ball(p, 1.0, tol); }
BallFit fit_exscribed_ball(const HPolytope& p, std::optional<double> tol) { return fit_ball(p, -1.0, tol); }

std::optional<Balld> inscribed_ball(const HPolytope& p, std::optional<double> tol) {
  return fit_inscribed_ball(p, tol).ball;
}

std::optional<Balld> exscribed_ball(const HPolytope& p, std::optional<double> tol) {
  return fit_exscribed_ball(p, tol).ball;
}

Balld chebyshev_ball(const HPolytope& p) {
  const Eigen::Index n = p.dimension();
  const Eigen::Index m = static_cast<Eigen::Index>(p.size());
  Matd a(m, n + 1);
  a.leftCols(n) = p.normals();
  a.col(n).setOnes();
  Vecd c = Vecd::Zero(n + 1);
  c(n) = 1;
  const lp::Result r = lp::maximize(a, p.offsets(), c);
  if (r.status == lp::Status::Infeasible) throw Error(ErrorKind::EmptySet, "polytope is empty");
  if (r.status == lp::Status::Unbounded)
    return Balld{r.x.size() ? Vecd(r.x.head(n)) : Vecd::Zero(n), std::numeric_limits<double>::infinity(),
                 Openness::Closed};
  return Balld{r.x.head(n), std::max(0.0, r.x(n)), Openness::Closed};
}

std::optional<Vecd> translation_witness(const HPolytope& p, double r, std::optional<double> tol) {
  if (!(r > 0)) throw Error(ErrorKind::InvalidRadius, "translation witness needs r > 0");
  const double t = tol.value_or(default_tolerance(p));
  const LeastSquares ls = solve_ls(p.normals(), Vecd::Constant(static_cast<Eigen::Index>(p.size()), -r));
  if (ls.condition > kMaxCondition || ls.residual > t) return std::nullopt;
  return ls.z;
}

ResilienceCertificate classify(const HPolytope& p, std::optional<double> tol) {
  ResilienceCertificate cert;
  const BallFit in = fit_inscribed_ball(p, tol);
  if (in.ball) {
    cert.kind = ResilienceKind::Decreasing;
    cert.inscribed = in.ball;
    return cert;
  }
  const BallFit ex = fit_exscribed_ball(p, tol);
  if (ex.ball) {
    cert.kind = ResilienceKind::Increasing;
    cert.exscribed = ex.ball;
    return cert;
  }
  if (auto v = translation_witness(p, 1.0, tol)) {
    cert.kind = ResilienceKind::Isometric;
    const double len = v->norm();
    cert.direction = *v / len;
    cert.angle = std::acos(std::clamp(-1.0 / len, -1.0, 1.0));
    return cert;
  }
  cert.diagnostic = "inscribed: " + in.diagnostic + "; exscribed: " + ex.diagnostic + "; no translation witness";
  return cert;
}

Similarityd predicted_sigma(const ResilienceCertificate& cert, double r) {
  require_radius(r);
  switch (cert.kind) {
    case ResilienceKind::Decreasing: {
      const Balld& b = *cert.inscribed;
      if (r >= b.radius) throw Error(ErrorKind::RadiusTooLarge, "erosion radius reaches the inscribed radius");
      return Similarityd::homothety(b.center, (b.radius - r) / b.radius);
    }
    case ResilienceKind::Increasing: {
      const Balld& b = *cert.exscribed;
      return Similarityd::homothety(b.center, (b.radius + r) / b.radius);
    }
    case ResilienceKind::Isometric: {
      // <n_i, v> = -r with <n_i, direction> = cos(angle) for every facet.
      const double len = -r / std::cos(*cert.angle);
      return Similarityd::translation(*cert.direction * len);
    }
    case ResilienceKind::None: break;
  }
  throw Error(ErrorKind::InvalidArgument, "no predicted similarity for a non-resilient set");
}

Similarityd chebyshev_candidate(const HPolytope& p, double r) {
  const Balld b = chebyshev_ball(p);
  if (!std::isfinite(b.radius) || !(b.radius > r))
    throw Error(ErrorKind::RadiusTooLarge, "radius reaches the Chebyshev radius");
  return Similarityd::homothety(b.center, (b.radius - r) / b.radius);
}

SimilarityCheck match_facets(const HPolytope& a, const HPolytope& b, double tol) {
  SimilarityCheck out;
  out.eroded_facets = a.size();
  out.image_facets = b.size();
  if (a.size() != b.size()) {
    out.reason = "facet counts differ";
    out.max_angle = M_PI;
    out.max_offset_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  std::vector<bool> used(b.size(), false);
  for (const auto& ha : a.halfspaces()) {
    std::size_t best = b.size();
    double best_angle = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      // Chord-based angle; acos loses precision for nearly equal normals.
      const double ang = 2.0 * std::asin(std::min(1.0, 0.5 * (ha.normal() - b.halfspaces()[j].normal()).norm()));
      if (ang < best_angle) {
        best_angle = ang;
        best = j;
      }
    }
    used[best] = true;
    out.max_angle = std::max(out.max_angle, best_angle);
    out.max_offset_residual = std::max(out.max_offset_residual, std::abs(ha.offset() - b.halfspaces()[best].offset()));
  }
  out.passed = out.max_angle <= tol && out.max_offset_residual <= tol;
  if (!out.passed) out.reason = out.max_angle > tol ? "normals differ" : "offsets differ";
  return out;
}

SimilarityCheck verify_similarity_report(const HPolytope& p, double r, const Similarityd& s,
                                         std::optional<double> tol) {
  const double t = tol.value_or(default_tolerance(p));
  const HPolytope base = p.reduced() ? p : reduce(p);
  const HPolytope eroded = erode_polytope(base, r);
  const HPolytope image = reduce(apply(s, base));
  return match_facets(eroded, image, t);
}

bool verify_similarity(const HPolytope& p, double r, const Similarityd& s, std::optional<double> tol) {
  return verify_similarity_report(p, r, s, tol).passed;
}

double radius_sequence(double r, double alpha, long i) {
  if (!(r > 0) || !(alpha > 0) || i == 0)
    throw Error(ErrorKind::InvalidArgument, "radius_sequence needs r > 0, alpha > 0, i != 0");
  double sum = 0;
  if (i > 0) {
    double term = r;
    for (long k = 0; k < i; ++k, term *= alpha) sum += term;
  } else {
    double term = r / alpha;
    for (long k = 1; k <= -i; ++k, term /= alpha) sum += term;
  }
  return sum;
}

bool expansion_resilient(const HPolytope& p, double r, std::optional<double> tol) {
  require_radius(r);
  const HPolytope q = p.reduced() ? p : reduce(p);
  const double t = tol.value_or(default_tolerance(q));
  if (q.size() == 1) return true;
  // A slab: its only supporting half-spaces are the two facets, both at half the width from the midplane.
  if (q.size() == 2) {
    const auto& a = q.halfspaces()[0];
    const auto& b = q.halfspaces()[1];
    if ((a.normal() + b.normal()).norm() <= t) {
      const double half_width = 0.5 * (a.offset() + b.offset());
      return half_width > r;
    }
  }
  return false;
}

}  // namespace morpho
