#include "morpho/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>

#include "morpho/generators.hpp"
#include "morpho/scene.hpp"
#include "morpho/svg.hpp"

#ifndef MORPHO_SOURCE_DATA_DIR
#define MORPHO_SOURCE_DATA_DIR "tests/golden"
#endif

namespace morpho {

namespace {

using Rng = std::mt19937_64;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Vecd random_unit(Rng& g, int n) {
  std::normal_distribution<double> z;
  Vecd v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = z(g);
  } while (v.norm() < 1e-3);
  return v.normalized();
}

double uniform(Rng& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

int uniform_int(Rng& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

// Every facet tangent to one ball; redrawn until bounded.
HPolytope random_tangent(Rng& g, int n) {
  for (;;) {
    const Vecd c = Vecd::NullaryExpr(n, [&](Eigen::Index) { return uniform(g, -1, 1); });
    const double radius = uniform(g, 0.5, 2.0);
    std::vector<HalfSpaced> hs;
    for (int k = 0; k < 3 * n + 3; ++k) {
      const Vecd u = random_unit(g, n);
      hs.emplace_back(u, radius + u.dot(c));
    }
    HPolytope p(std::move(hs));
    if (is_bounded(p)) return p;
  }
}

// Facets at independent distances from the origin; at least n + 2 survive reduction.
HPolytope random_nontangent(Rng& g, int n) {
  for (;;) {
    std::vector<HalfSpaced> hs;
    const int m = n == 2 ? uniform_int(g, 4, 7) : uniform_int(g, 8, 12);
    for (int k = 0; k < m; ++k) hs.emplace_back(random_unit(g, n), uniform(g, 1.0, 3.0));
    HPolytope p(std::move(hs));
    if (!is_bounded(p)) continue;
    HPolytope q = reduce(p);
    if (q.size() >= static_cast<std::size_t>(n + 2)) return q;
  }
}

Similarityd random_similarity(Rng& g, int n) {
  std::normal_distribution<double> z;
  Matd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) m(i, k) = z(g);
  Matd q = Eigen::HouseholderQR<Matd>(m).householderQ();
  const Vecd b = Vecd::NullaryExpr(n, [&](Eigen::Index) { return uniform(g, -3, 3); });
  return Similarityd(std::exp(uniform(g, std::log(0.25), std::log(4.0))), q, b);
}

// ---- criteria ----

Outcome convex_positive(unsigned seed) {
  Rng g(seed * 7919u + 1);
  std::vector<HPolytope> ps;
  for (int k = 0; k < 10; ++k) {
    double a = 0, b = 0;
    do {
      a = uniform(g, 0.2, M_PI - 0.4);
      b = uniform(g, 0.2, M_PI - 0.4);
    } while (M_PI - a - b < 0.2);
    ps.push_back(triangle({a, b, M_PI - a - b}, uniform(g, 0.5, 2.0)));
  }
  for (int n = 3; n <= 12; ++n)
    ps.push_back(regular_polygon(n, uniform(g, 0.5, 3.0), Eigen::Vector2d(uniform(g, -2, 2), uniform(g, -2, 2))));
  for (int k = 0; k < 15; ++k) ps.push_back(random_tangent(g, 2));
  for (int k = 0; k < 15; ++k) ps.push_back(random_tangent(g, 3));

  double worst = 0;
  int failures = 0;
  for (const auto& p : ps) {
    const ResilienceCertificate cert = classify(p);
    if (cert.kind != ResilienceKind::Decreasing) {
      ++failures;
      continue;
    }
    const double radius = cert.inscribed->radius;
    for (double f : {0.1, 0.5, 0.9}) {
      const SimilarityCheck rep = verify_similarity_report(p, f * radius, predicted_sigma(cert, f * radius), 1e-8);
      worst = std::max({worst, rep.max_offset_residual, rep.max_angle});
      if (!rep.passed) ++failures;
    }
  }
  return {failures == 0, std::to_string(ps.size()) + " polytopes, " + std::to_string(failures) +
                             " failures, max facet residual " + num(worst) + " (limit 1e-08)"};
}

Outcome convex_negative(unsigned seed) {
  Rng g(seed * 7919u + 2);
  std::vector<HPolytope> ps{axis_box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 2))};
  for (int k = 0; k < 10; ++k) ps.push_back(random_nontangent(g, 2));
  for (int k = 0; k < 10; ++k) ps.push_back(random_nontangent(g, 3));
  int misclassified = 0, verified = 0;
  for (const auto& p : ps) {
    if (classify(p).kind != ResilienceKind::None) ++misclassified;
    for (double r : {0.1, 0.3})
      if (verify_similarity(p, r, chebyshev_candidate(p, r))) ++verified;
  }
  return {misclassified == 0 && verified == 0,
          std::to_string(ps.size()) + " polytopes, " + std::to_string(misclassified) + " not classified none, " +
              std::to_string(verified) + " candidate maps wrongly verified"};
}

Outcome tent_suite() {
  const TentStages st = tent_pipeline({0.4, 0.7, 1.0});
  const auto k1 = classify(st.x1).kind, k2 = classify(st.x2).kind, k3 = classify(st.x3).kind;
  const BallFit ex = fit_exscribed_ball(st.x3);
  const HPolytope x4 = tent({0.5, 0.5, 1.0});
  const auto k4 = classify(x4).kind;
  double witness_residual = std::numeric_limits<double>::infinity();
  if (const auto v = translation_witness(x4, 0.5)) {
    witness_residual = 0;
    for (const auto& h : x4.halfspaces()) witness_residual = std::max(witness_residual, std::abs(h.normal().dot(*v) + 0.5));
  }
  const bool ok = k1 == ResilienceKind::Decreasing && k2 == ResilienceKind::None && k3 == ResilienceKind::Increasing &&
                  ex.ball && ex.residual <= 1e-8 && k4 == ResilienceKind::Isometric && witness_residual <= 1e-8;
  return {ok, std::string("X1 ") + to_string(k1) + ", X2 " + to_string(k2) + ", X3 " + to_string(k3) +
                  " (exscribed residual " + num(ex.residual) + "), X4 " + to_string(k4) + " (witness residual " +
                  num(witness_residual) + ")"};
}

Outcome example1_suite() {
  const Example1Report rep = verify_example1(3);
  std::string detail;
  bool ok = rep.passed();
  for (const auto& c : rep.checks) {
    if (!c.required) continue;
    detail += c.name + (c.holds ? " ok; " : " FAILS; ");
  }
  const IntervalSet1D x = build_X(3).first;
  const IntervalSet1D e1 = erode1d(x, 1);
  const auto factor = scaled_copy_factor(e1, x, rep.window);
  const std::size_t ne = restrict_to(e1, rep.window).endpoints().size();
  const std::size_t nx = restrict_to(x, rep.window).endpoints().size();
  ok = ok && !factor;
  detail += "e_1(X) = c X: " + (factor ? "holds for c = " + format_rational(*factor) : std::string("no rational c")) +
            " (endpoints on window " + std::to_string(ne) + " vs " + std::to_string(nx) + ")";
  return {ok, detail};
}

Outcome dimension_suite() {
  const double s3 = similarity_dimension({0.5, 0.5, 0.5});
  const double s4 = similarity_dimension({1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3});
  const bool ok = std::abs(s3 - 1.5849625007) <= 1e-9 && std::abs(s4 - 1.2618595071) <= 1e-9;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.10f and %.10f", s3, s4);
  return {ok, buf};
}

Outcome edt_suite(unsigned seed) {
  Rng g(seed * 7919u + 6);
  constexpr int N = 64;
  const RasterWindow w(Vecd::Zero(2), 1.0, {N, N});
  int mismatched = 0;
  for (int t = 0; t < 20; ++t) {
    const double density = t == 0 ? 0.0 : (t == 1 ? 1.0 / (N * N) : uniform(g, 0.02, 0.98));
    RasterSet rs(w, uniform_int(g, 0, 1) ? BorderPolicy::Inside : BorderPolicy::Outside);
    std::bernoulli_distribution bit(density);
    for (std::size_t i = 0; i < rs.size(); ++i) rs.set(i, t == 1 ? i == 1000 : bit(g));
    const Phase phase = uniform_int(g, 0, 1) ? Phase::Set : Phase::Complement;
    const bool use_border = uniform_int(g, 0, 3) != 0;
    const DistanceField d = edt(rs, phase, use_border);

    std::vector<std::pair<int, int>> sites;
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i)
        if (rs[static_cast<std::size_t>(j * N + i)] == (phase == Phase::Set)) sites.emplace_back(i, j);
    const bool border_is_phase = (rs.border_policy() == BorderPolicy::Inside) == (phase == Phase::Set);
    if (use_border && border_is_phase)
      for (int k = -1; k <= N; ++k) sites.insert(sites.end(), {{k, -1}, {k, N}, {-1, k}, {N, k}});
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        std::int64_t best = DistanceField::kInf;
        for (const auto& [si, sj] : sites)
          best = std::min<std::int64_t>(best, static_cast<std::int64_t>(si - i) * (si - i) + static_cast<std::int64_t>(sj - j) * (sj - j));
        if (best != d.squared[static_cast<std::size_t>(j * N + i)]) {
          ++mismatched;
          break;
        }
      }
  }
  return {mismatched == 0, "20 grids of 64x64, " + std::to_string(mismatched) + " with a mismatching pixel"};
}

Outcome ball_convexity_suite() {
  const double h = 1.0, r = 10 * h, r_max = 64;
  const RasterWindow w = RasterWindow::centered(Vecd::Zero(2), h, {512, 512});
  auto disc = [](double cx, double cy, double rad) {
    return [=](const double* x) { return std::hypot(x[0] - cx, x[1] - cy) <= rad; };
  };
  auto box = [](double x0, double y0, double x1, double y1) {
    return [=](const double* x) { return x[0] >= x0 && x[0] <= x1 && x[1] >= y0 && x[1] <= y1; };
  };
  using Shape = std::function<bool(const double*)>;
  auto minus = [](Shape a, Shape b) -> Shape { return [=](const double* x) { return a(x) && !b(x); }; };
  auto plus = [](Shape a, Shape b) -> Shape { return [=](const double* x) { return a(x) || b(x); }; };
  auto triangle_star = [](double rad, double phase) -> Shape {
    const HPolytope t = regular_polygon(3, rad, Vecd::Zero(2));
    return [=](const double* x) {
      const double c = std::cos(phase), s = std::sin(phase);
      const Vecd y = Eigen::Vector2d(c * x[0] + s * x[1], -s * x[0] + c * x[1]);
      return t.contains(y, 1e-9);
    };
  };
  const std::vector<Shape> nonconvex{
      plus(box(-80, -80, 80, 0), box(-80, -80, 0, 80)),
      minus(box(-80, -80, 80, 80), disc(80, 0, 30)),
      plus(disc(-35, 0, 50), disc(35, 0, 50)),
      plus(box(-80, -25, 80, 25), box(-25, -80, 25, 80)),
      minus(box(-80, -80, 80, 80), disc(0, 80, 20)),
      minus(disc(0, 0, 85), disc(0, 0, 30)),
      minus(box(-80, -80, 80, 80), box(-30, 0, 30, 90)),
      plus(triangle_star(85, 0), triangle_star(85, M_PI)),
      minus(disc(0, 0, 80), disc(60, 0, 40)),
      plus(box(-80, -80, 0, 0), box(-10, -10, 80, 80)),
  };
  const std::vector<Shape> convex{
      disc(0, 0, 85), disc(10, -5, 60), disc(0, 0, 30), box(-80, -80, 80, 80), box(-60, -20, 70, 40),
      triangle_star(85, 0.3), [](const double* x) { return x[0] * x[0] / (85.0 * 85) + x[1] * x[1] / (40.0 * 40) <= 1; },
      [hex = regular_polygon(6, 80, Vecd::Zero(2))](const double* x) { return hex.contains(Eigen::Vector2d(x[0], x[1]), 1e-9); },
      box(-20, -85, 20, 85), disc(-40, 40, 45)};

  int failures = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (const auto& f : nonconvex) {
    const RasterSet rs = rasterize(w, BorderPolicy::Outside, f);
    const BallConvexity before = ball_convexity(rs, r_max, 0.25 * h);
    const BallConvexity after = ball_convexity(erode_raster(rs, r), r_max, 0.25 * h);
    const double gap = after.value - (before.value + r - 2 * h);
    worst_gap = std::min(worst_gap, gap);
    if (gap < 0 && !after.saturated) ++failures;
  }
  int convex_failures = 0;
  for (const auto& f : convex) {
    const BallConvexity bc = ball_convexity(rasterize(w, BorderPolicy::Outside, f), r_max, 0.25 * h);
    if (!(bc.value >= r_max)) ++convex_failures;
  }
  return {failures == 0 && convex_failures == 0,
          "nonconvex: " + std::to_string(failures) + "/10 violate bc(e_r) >= bc + r - 2h (min slack " + num(worst_gap) +
              "); convex: " + std::to_string(convex_failures) + "/10 below r_max"};
}

Outcome if_direction() {
  const Similarityd two = Similarityd::homothety(Vecd::Zero(2), 2.0);
  const RasterWindow sq_window = RasterWindow::centered(Vecd::Zero(2), 1.0, {1024, 1024});
  const RasterSet w = scale_invariant_extension(axis_box(Eigen::Vector2d(10, -3), Eigen::Vector2d(16, 3)), two, -6, 6, sq_window);
  const double r_prime = 5.0;
  const RasterVerification sq = verify_resilience_raster(resilient_from_si(w, two, r_prime), r_prime * (2 - 1), two, 2.0);
  bool ok = sq.passed;
  std::string detail = "square: " + num(sq.hausdorff / sq.spacing) + " px";

  const SpiralParams p{1.0, 0.15, 0.0, 26.0};
  const RasterSet s1 = spiral_S1(p, RasterWindow::centered(Vecd::Zero(2), 0.06, {1024, 1024}));
  for (double r : {0.1, 0.3, 0.7}) {
    const RasterVerification v = verify_resilience_raster(s1, r, spiral_sigma(p, r), 2.0);
    ok = ok && v.passed;
    detail += "; spiral r=" + num(r) + ": " + num(v.hausdorff / v.spacing) + " px";
  }
  return {ok, detail + " (limit 2 px)"};
}

// Hausdorff distance over the valid region minus the disc |x| < inner about the origin.
double hausdorff_beyond(const RasterSet& a, const RasterSet& b, double inner) {
  const double margin = std::max(a.valid_margin(), b.valid_margin());
  const RasterWindow& w = a.window();
  const DistanceField da = edt(a, Phase::Set, false), db = edt(b, Phase::Set, false);
  std::int64_t worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (w.border_distance(i) < margin || w.center(i).norm() < inner) continue;
    if (a[i]) worst = std::max<std::int64_t>(worst, db.squared[i]);
    if (b[i]) worst = std::max<std::int64_t>(worst, da.squared[i]);
  }
  return std::sqrt(static_cast<double>(worst)) * w.spacing;
}

Outcome only_if_direction() {
  // Copy half-widths are 30 * 1.3^i; r_e keeps [r_e, r_e (1 + 1.3^-8)] clear of them (4.78 < 5.2, 5.84 < 6.21)
  // so no copy survives the erosion as a sliver thinner than the k_max truncation.
  const double alpha = 1.3, r_e = 5.2;
  const int k_max = 8;
  const Similarityd s = Similarityd::spiral2d(Vecd::Zero(2), alpha, 1.0);
  const RasterWindow w = RasterWindow::centered(Vecd::Zero(2), 1.0, {4096, 4096});
  const Eigen::Vector2d lo(60, -30), hi(200, 30);
  const RasterSet q = discrete_spiral_Q(s, axis_box(lo, hi), -23, 14, r_e, w);
  const RasterSet big_w = si_from_resilient(q, s, k_max);
  // Every copy inside this disc is thinner than the 2 px tolerance.
  const double inner = hi.norm() / (hi(1) - lo(1)) * 2.0 * w.spacing;
  const double h_si = hausdorff_beyond(resample(big_w, s), big_w, inner);
  const double h_rt = hausdorff_beyond(erode_raster(big_w, r_e), q, inner);
  const bool ok = h_si <= 2.0 * w.spacing && h_rt <= 2.0 * w.spacing;
  return {ok, "resample(W, s) vs W: " + num(h_si / w.spacing) + " px; erode(W, r/(a-1)) vs Q_r: " +
                  num(h_rt / w.spacing) + " px (limit 2 px; valid margin " + num(big_w.valid_margin()) +
                  ", inner radius " + num(inner) + ")"};
}

Outcome commutation_suite(unsigned seed) {
  Rng g(seed * 7919u + 10);
  int failures = 0;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = uniform_int(g, 2, 3);
    const HPolytope x = random_tangent(g, n);
    const Similarityd s = random_similarity(g, n);
    const double radius = inscribed_ball(x)->radius;
    const double r = uniform(g, 0.05, 0.95) * radius;
    const SimilarityCheck c = match_facets(apply(s, erode_polytope(x, r)), erode_polytope(apply(s, x), s.scale() * r), 1e-9);
    worst = std::max({worst, c.max_angle, c.max_offset_residual});
    if (!c.passed) ++failures;
  }
  return {failures == 0, "100 triples, " + std::to_string(failures) + " failures, max facet deviation " + num(worst) + " (limit 1e-09)"};
}

Outcome duality_suite(unsigned seed) {
  Rng g(seed * 7919u + 11);
  auto rational = [&](int lo, int hi) { return Rational(uniform_int(g, lo, hi)) / uniform_int(g, 1, 12); };
  int interval_failures = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<Interval> pieces;
    const int m = uniform_int(g, 1, 6);
    for (int k = 0; k < m; ++k) {
      Rational a = rational(-60, 60), b = rational(-60, 60);
      if (b < a) std::swap(a, b);
      Interval iv{Endpoint{a, uniform_int(g, 0, 1) == 1}, Endpoint{b, uniform_int(g, 0, 1) == 1}};
      if (uniform_int(g, 0, 9) == 0) iv.lo.reset();
      if (uniform_int(g, 0, 9) == 0) iv.hi.reset();
      pieces.push_back(iv);
    }
    const IntervalSet1D x(pieces);
    const Rational r = rational(1, 60);
    if (!(erode1d(x, r) == complement(expand1d(complement(x), r)))) ++interval_failures;
  }

  int raster_failures = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = t % 10 == 9 ? 3 : 2;
    const int side = n == 3 ? 24 : uniform_int(g, 48, 96);
    const RasterWindow w(Vecd::Zero(n), 1.0, std::vector<int>(static_cast<std::size_t>(n), side));
    std::vector<std::pair<Vecd, double>> blobs;
    for (int k = uniform_int(g, 1, 6); k > 0; --k)
      blobs.emplace_back(Vecd::NullaryExpr(n, [&](Eigen::Index) { return uniform(g, 0, side); }), uniform(g, 2, side / 3.0));
    RasterSet x = rasterize(w, uniform_int(g, 0, 1) ? BorderPolicy::Inside : BorderPolicy::Outside, [&](const double* p) {
      for (const auto& [c, rad] : blobs) {
        double s = 0;
        for (int a = 0; a < n; ++a) s += (p[a] - c(a)) * (p[a] - c(a));
        if (s <= rad * rad) return true;
      }
      return false;
    });
    const double r = uniform(g, 0.5, 8.0);
    if (erode_raster(x, r).bits() != complement(expand_raster(complement(x), r)).bits()) ++raster_failures;
  }
  return {interval_failures == 0 && raster_failures == 0,
          "interval1d: " + std::to_string(interval_failures) + "/50 failures (exact); raster: " +
              std::to_string(raster_failures) + "/50 failures (per pixel)"};
}

Outcome figure_suite(const std::filesystem::path& dir) {
  int mismatched = 0;
  std::string detail;
  for (const auto& fc : figure_cases()) {
    const Scene scene = load_scene(dir / (fc.name + ".json"));
    const std::string svg = render_svg(scene, parse_layers(fc.layers));
    const bool same = svg == read_text(dir / (fc.name + ".svg"));
    mismatched += same ? 0 : 1;
    detail += fc.name + (same ? " ok; " : " DIFFERS; ");
  }
  const Scene sier = load_scene(dir / "sierpinski_extension.json");
  const bool pgm_same = read_pgm(dir / "sierpinski_extension.pgm") == std::get<RasterSet>(sier.payload);
  detail += std::string("sierpinski_extension.pgm ") + (pgm_same ? "ok" : "DIFFERS");
  return {mismatched == 0 && pgm_same, detail};
}

struct Criterion {
  int id;
  const char* suite;
  const char* name;
  double budget;
  std::function<Outcome(const AcceptanceOptions&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "convex", "inscribed-ball polytopes match predicted similarity", 5, [](const auto& o) { return convex_positive(o.seed); }},
      {2, "convex", "non-tangent polytopes are not resilient", 2, [](const auto& o) { return convex_negative(o.seed); }},
      {3, "convex", "tent pipeline", 1, [](const auto&) { return tent_suite(); }},
      {4, "interval1d", "scaled-copy exact identities", 5, [](const auto&) { return example1_suite(); }},
      {5, "generators", "similarity dimension", 0.1, [](const auto&) { return dimension_suite(); }},
      {6, "raster", "exact distance transform", 5, [](const auto& o) { return edt_suite(o.seed); }},
      {7, "raster", "ball-convexity monotonicity", 60, [](const auto&) { return ball_convexity_suite(); }},
      {8, "generators", "scale-invariant to resilient", 120, [](const auto&) { return if_direction(); }},
      {9, "generators", "resilient to scale-invariant", 120, [](const auto&) { return only_if_direction(); }},
      {10, "convex", "erosion commutes with similarities", 5, [](const auto& o) { return commutation_suite(o.seed); }},
      {11, "duality", "erosion/expansion duality", 30, [](const auto& o) { return duality_suite(o.seed); }},
      {12, "figures", "figure regression", 30, [](const auto& o) { return figure_suite(o.data_dir); }},
  };
  return all;
}

bool selected(const Criterion& c, const std::string& filter) {
  if (filter.empty() || filter == "all") return true;
  if (filter == c.suite || filter == std::to_string(c.id)) return true;
  // The duality criterion exercises both exact and raster modules.
  return c.id == 11 && (filter == "interval1d" || filter == "raster");
}

}  // namespace

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("MORPHO_DATA_DIR"); env && *env) return env;
  return MORPHO_SOURCE_DATA_DIR;
}

const std::vector<FigureCase>& figure_cases() {
  static const std::vector<FigureCase> cases{
      {"square_erosion", "erosion:0.1,0.25"},
      {"hexagon_incircle", "inscribed"},
      {"sierpinski_extension", ""},
      {"koch_resilient", "erosion:0.0625,0.125"},
  };
  return cases;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  AcceptanceOptions opts = options;
  if (opts.data_dir.empty()) opts.data_dir = default_data_dir();
  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (!selected(c, opts.filter)) continue;
    CriterionResult r{c.id, c.suite, c.name, false, 0, c.budget, ""};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = c.run(opts);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += "; over the runtime budget";
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  if (results.empty()) throw Error(ErrorKind::InvalidArgument, "filter '" + opts.filter + "' selects no criterion");
  return results;
}

std::string format_result_line(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.2f s / %g s)", r.seconds, r.budget_seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.suite + ": " + r.name + buf +
         " - " + r.detail;
}

Json results_json(const std::vector<CriterionResult>& results) {
  Json arr = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back(Json{{"id", r.id},
                       {"suite", r.suite},
                       {"name", r.name},
                       {"passed", r.passed},
                       {"budget_seconds", r.budget_seconds},
                       {"within_budget", r.seconds <= r.budget_seconds},
                       {"detail", r.detail}});
  }
  return Json{{"format", kFormatVersion}, {"passed", all}, {"criteria", arr}};
}

}  // namespace morpho
