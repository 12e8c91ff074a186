#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "morpho/generators.hpp"
#include "morpho/raster.hpp"

using namespace morpho;

namespace {

Vecd v2(double x, double y) {
  Vecd v(2);
  v << x, y;
  return v;
}

RasterWindow square_window(int n, double h = 1.0) { return RasterWindow::centered(Vecd::Zero(2), h, {n, n}); }

RasterSet disc(const RasterWindow& w, double radius, double cx = 0, double cy = 0) {
  return rasterize(w, BorderPolicy::Outside, [&](const double* x) {
    return (x[0] - cx) * (x[0] - cx) + (x[1] - cy) * (x[1] - cy) <= radius * radius;
  });
}

RasterSet ell(const RasterWindow& w) {
  return rasterize(w, BorderPolicy::Outside, [](const double* x) {
    const bool a = x[0] >= -30 && x[0] <= 30 && x[1] >= -30 && x[1] <= -10;
    const bool b = x[0] >= -30 && x[0] <= -10 && x[1] >= -30 && x[1] <= 30;
    return a || b;
  });
}

RasterSet random_set(const RasterWindow& w, double density, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::bernoulli_distribution coin(density);
  RasterSet rs(w);
  for (std::size_t i = 0; i < rs.size(); ++i) rs.set(i, coin(g));
  return rs;
}

// Squared distance (pixel units) to the nearest pixel of the phase, or to the outside layer.
std::int64_t brute_squared(const RasterSet& rs, std::size_t i, bool want, bool border) {
  const auto& w = rs.window();
  const auto a = w.multi_index(i);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t j = 0; j < rs.size(); ++j) {
    if (rs[j] != want) continue;
    const auto b = w.multi_index(j);
    std::int64_t d = 0;
    for (int k = 0; k < w.dimension(); ++k) d += std::int64_t(a[k] - b[k]) * (a[k] - b[k]);
    best = std::min(best, d);
  }
  if (border)
    for (int k = 0; k < w.dimension(); ++k) {
      const std::int64_t t = std::min(a[k] + 1, w.dims[static_cast<std::size_t>(k)] - a[k]);
      best = std::min(best, t * t);
    }
  return best;
}

double brute_hausdorff(const RasterSet& a, const RasterSet& b) {
  const auto& w = a.window();
  auto directed = [&](const RasterSet& p, const RasterSet& q) {
    double worst = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i]) continue;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < q.size(); ++j)
        if (q[j]) best = std::min(best, (w.center(i) - w.center(j)).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

TEST_CASE("edt matches brute force in 2-D and 3-D") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const bool three = seed > 3;
    const RasterWindow w = three ? RasterWindow(Vecd::Zero(3), 1.0, {7, 9, 6}) : RasterWindow(Vecd::Zero(2), 0.5, {23, 17});
    RasterSet rs = random_set(w, 0.08, seed);
    rs.set_border_policy(seed % 2 ? BorderPolicy::Outside : BorderPolicy::Inside);
    for (Phase ph : {Phase::Set, Phase::Complement}) {
      for (bool use_border : {true, false}) {
        const DistanceField d = edt(rs, ph, use_border);
        const bool want = ph == Phase::Set;
        const bool border = use_border && (want == (rs.border_policy() == BorderPolicy::Inside));
        for (std::size_t i = 0; i < rs.size(); ++i) CHECK(d.squared[i] == brute_squared(rs, i, want, border));
      }
    }
  }
}

TEST_CASE("edt special fields") {
  const RasterWindow w = square_window(15, 2.0);
  RasterSet one(w);
  one.set(7 + 15 * 7, true);
  const DistanceField d = edt(one, Phase::Set, false);
  for (std::size_t i = 0; i < one.size(); ++i) {
    const auto idx = w.multi_index(i);
    CHECK(d.squared[i] == (idx[0] - 7) * (idx[0] - 7) + (idx[1] - 7) * (idx[1] - 7));
  }
  CHECK(d.at(0) == doctest::Approx(2.0 * std::sqrt(98.0)));

  RasterSet full(w);
  for (std::size_t i = 0; i < full.size(); ++i) full.set(i, true);
  const DistanceField c = edt(full, Phase::Complement);
  for (std::size_t i = 0; i < full.size(); ++i) CHECK(c.at(i) == doctest::Approx(w.border_distance(i) + 1.0));
  CHECK(std::isinf(edt(full, Phase::Complement, false).at(3)));
}

TEST_CASE("disc erosion shrinks the radius") {
  const RasterWindow w = square_window(161);
  const RasterSet e = erode_raster(disc(w, 50), 10);
  CHECK(e.valid_margin() == 10);
  CHECK(hausdorff(e, disc(w, 40)) <= std::sqrt(2.0));
  CHECK(erode_raster(disc(w, 50), 0).bits() == disc(w, 50).bits());
  CHECK_THROWS_AS(erode_raster(disc(w, 5), -1), Error);
}

TEST_CASE("square erosion agrees with the polytope erosion") {
  const RasterWindow w = square_window(101, 0.5);
  const HPolytope sq = axis_box(v2(-20, -20), v2(20, 20));
  const auto raster_of = [&](const HPolytope& p) {
    return rasterize(w, BorderPolicy::Outside, [&](const double* x) { return p.contains(v2(x[0], x[1]), 1e-12); });
  };
  for (double r : {0.5, 3.3, 7.25}) CHECK(hausdorff(erode_raster(raster_of(sq), r), raster_of(erode_polytope(sq, r))) <= 0.5 * std::sqrt(2.0));
}

TEST_CASE("expansion of a point is an open disc") {
  const RasterWindow w = square_window(31);
  RasterSet p(w);
  p.set(15 + 31 * 15, true);
  const RasterSet e = expand_raster(p, 7);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto idx = w.multi_index(i);
    CHECK(e[i] == ((idx[0] - 15) * (idx[0] - 15) + (idx[1] - 15) * (idx[1] - 15) < 49));
  }
}

TEST_CASE("erosion and expansion are dual per pixel") {
  const RasterWindow w = square_window(48, 0.75);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RasterSet x = random_set(w, 0.7, seed);
    x.set_border_policy(seed % 2 ? BorderPolicy::Outside : BorderPolicy::Inside);
    for (double r : {0.75, 1.6, 3.0}) {
      CHECK(erode_raster(x, r).bits() == complement(expand_raster(complement(x), r)).bits());
      CHECK(expand_raster(x, r).bits() == complement(erode_raster(complement(x), r)).bits());
    }
  }
}

TEST_CASE("opening examples") {
  const RasterWindow w = square_window(121);
  CHECK(hausdorff(opening(disc(w, 30), 10), disc(w, 30)) <= std::sqrt(2.0));

  const RasterSet box = rasterize(w, BorderPolicy::Outside, [](const double* x) { return std::abs(x[0]) <= 30 && std::abs(x[1]) <= 30; });
  const RasterSet o = opening(box, 10);
  const std::size_t corner = w.flat_index({30, 30, 0});
  const std::size_t middle = w.flat_index({60, 30, 0});
  CHECK(box[corner]);
  CHECK_FALSE(o[corner]);
  CHECK(o[middle]);

  const RasterSet bar = rasterize(w, BorderPolicy::Outside, [](const double* x) { return std::abs(x[0]) <= 1 && std::abs(x[1]) <= 40; });
  CHECK(opening(bar, 3).count() == 0);
}

TEST_CASE("hausdorff matches brute force") {
  const RasterWindow w = square_window(32, 0.5);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RasterSet a = random_set(w, 0.05, seed), b = random_set(w, 0.02, seed + 100);
    CHECK(hausdorff(a, b) == doctest::Approx(brute_hausdorff(a, b)));
  }
  const RasterWindow big = square_window(101);
  CHECK(hausdorff(disc(big, 20), disc(big, 20, 3, 0)) == doctest::Approx(3.0));
  CHECK_THROWS_AS(hausdorff(RasterSet(w), disc(w, 3)), Error);
}

TEST_CASE("resample") {
  const RasterWindow w = square_window(101);
  const RasterSet l = ell(w);
  const RasterSet same = resample(l, Similarityd::identity(2));
  CHECK(same.bits() == l.bits());
  CHECK(same.valid_margin() == 0);

  Matd q(2, 2);
  q << 0, -1, 1, 0;
  const RasterSet rot = resample(l, Similarityd(1.0, q, Vecd::Zero(2)));
  const RasterSet expect = rasterize(w, BorderPolicy::Outside, [&](const double* x) {
    const double y[2] = {x[1], -x[0]};
    return l[w.flat_index({static_cast<int>(std::lround(y[0] + 50)), static_cast<int>(std::lround(y[1] + 50)), 0})];
  });
  CHECK(rot.bits() == expect.bits());

  const RasterSet half = resample(disc(w, 40), Similarityd::homothety(Vecd::Zero(2), 0.5));
  CHECK(hausdorff(half, disc(w, 20)) <= std::sqrt(2.0));

  Vecd far(2);
  far << 1000, 0;
  CHECK_THROWS_AS(resample(l, Similarityd::translation(far)), Error);
}

TEST_CASE("raster resilience check on a disc") {
  const RasterWindow w = square_window(181);
  const RasterSet d = disc(w, 60, 4, -3);
  const RasterVerification ok = verify_resilience_raster(d, 15, Similarityd::homothety(v2(4, -3), 0.75));
  CHECK(ok.passed);
  CHECK(ok.hausdorff <= 2.0);
  CHECK(ok.valid_area > 0);
  const RasterVerification bad = verify_resilience_raster(d, 15, Similarityd::homothety(v2(4, -3), 0.8));
  CHECK_FALSE(bad.passed);
  CHECK(bad.hausdorff >= 2.5);
}

TEST_CASE("homothety estimate recovers a known similarity") {
  const RasterWindow w = square_window(161);
  const RasterSet a = ell(w);
  Matd q(2, 2);
  q << std::cos(0.5), -std::sin(0.5), std::sin(0.5), std::cos(0.5);
  const Similarityd truth(0.7, q, v2(6, -4));
  const RasterSet b = resample(a, truth);
  const HomothetyEstimate est = estimate_homothety(a, b);
  CHECK(est.sigma.scale() == doctest::Approx(0.7).epsilon(0.03));
  CHECK((est.sigma.rotation() - q).norm() <= 0.06);
  CHECK(est.residual <= 3.0);
  CHECK(max_deviation_on_unit_box(est.sigma, truth) <= 3.0);
}

TEST_CASE("ball convexity") {
  const RasterWindow w = square_window(121);
  const BallConvexity convex = ball_convexity(disc(w, 30), 8, 0.05);
  CHECK(convex.saturated);
  CHECK(convex.value == 8);

  const BallConvexity l = ball_convexity(ell(w), 8, 0.05);
  CHECK_FALSE(l.saturated);
  CHECK(l.value < 4);

  // The complement of a disc hole is not a union of balls larger than the hole.
  const RasterSet holed = complement(disc(w, 12));
  const BallConvexity hole = ball_convexity(holed, 20, 0.05);
  CHECK_FALSE(hole.saturated);
  CHECK(hole.value <= 12.5);
  CHECK(hole.value >= 11);
}

TEST_CASE("component labels") {
  const RasterWindow w = square_window(101);
  RasterSet s = unite(disc(w, 10, -25, 0), disc(w, 10, 25, 0));
  s.set(w.flat_index({50, 90, 0}), true);
  int n = 0;
  const auto labels = label_components(s, &n);
  CHECK(n == 3);
  const RasterSet first = select_component(s, labels, labels[w.flat_index({25, 50, 0})]);
  CHECK(first.bits() == disc(w, 10, -25, 0).bits());
  // Diagonal neighbours are separate components.
  RasterSet diag(w);
  diag.set(w.flat_index({10, 10, 0}), true);
  diag.set(w.flat_index({11, 11, 0}), true);
  label_components(diag, &n);
  CHECK(n == 2);
}
