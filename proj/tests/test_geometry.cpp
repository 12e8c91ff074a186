#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "morpho/geometry.hpp"

using namespace morpho;

namespace {

std::mt19937_64 rng(17);

Vecd random_vec(int n, double scale = 1.0) {
  std::normal_distribution<double> z;
  Vecd v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * z(rng);
  return v;
}

Matd random_rotation(int n) {
  Matd m(n, n);
  for (int i = 0; i < n; ++i) m.col(i) = random_vec(n);
  Eigen::HouseholderQR<Matd> qr(m);
  return qr.householderQ();
}

Similarityd random_similarity(int n) {
  std::uniform_real_distribution<double> u(0.3, 3.0);
  return Similarityd(u(rng), random_rotation(n), random_vec(n));
}

Matd rot2(double t) {
  Matd q(2, 2);
  q << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return q;
}

}  // namespace

TEST_CASE("compose of pure scalings multiplies scales") {
  const Similarityd a = Similarityd::homothety(Vecd::Zero(2), 2.0);
  const Similarityd b = Similarityd::homothety(Vecd::Zero(2), 3.0);
  const Similarityd c = compose(a, b);
  CHECK(c.scale() == doctest::Approx(6.0));
  CHECK(c.offset().norm() == 0.0);
  CHECK((c.rotation() - Matd::Identity(2, 2)).norm() == 0.0);
  CHECK(max_deviation_on_unit_box(compose(Similarityd::identity(2), Similarityd::identity(2)), Similarityd::identity(2)) == 0.0);
}

TEST_CASE("compose agrees with applying maps in turn") {
  Vecd b(2);
  b << 1, 0;
  const Similarityd s(1.0, rot2(M_PI / 2), b);
  const Similarityd ss = compose(s, s);
  for (int i = 0; i < 100; ++i) {
    const Vecd x = random_vec(2, 5.0);
    CHECK((ss(x) - s(s(x))).norm() <= 1e-12);
  }
}

TEST_CASE("compose is associative") {
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    const Similarityd a = random_similarity(n), b = random_similarity(n), c = random_similarity(n);
    CHECK(max_deviation_on_unit_box(compose(compose(a, b), c), compose(a, compose(b, c))) <= 1e-10);
  }
}

TEST_CASE("compose rejects mixed dimensions") {
  CHECK_THROWS_AS(compose(Similarityd::identity(2), Similarityd::identity(3)), Error);
}

TEST_CASE("invert round trips") {
  CHECK(max_deviation_on_unit_box(invert(Similarityd::identity(3)), Similarityd::identity(3)) == 0.0);
  const Similarityd half = invert(Similarityd::homothety(Vecd::Zero(2), 2.0));
  CHECK(half.scale() == 0.5);
  CHECK(half.offset().norm() == 0.0);
  for (int t = 0; t < 10; ++t) {
    const Similarityd s = random_similarity(3);
    const Similarityd si = invert(s);
    CHECK(max_deviation_on_unit_box(compose(s, si), Similarityd::identity(3)) <= 1e-10);
    for (int i = 0; i < 100; ++i) {
      const Vecd x = random_vec(3, 4.0);
      CHECK((si(s(x)) - x).norm() <= 1e-10);
    }
  }
}

TEST_CASE("power matches repeated composition, negative powers invert") {
  const Similarityd s = Similarityd::spiral2d(Vecd::Zero(2), 1.3, 1.0);
  Similarityd acc = Similarityd::identity(2);
  for (int i = 1; i <= 12; ++i) {
    acc = compose(s, acc);
    CHECK(max_deviation_on_unit_box(power(s, i), acc) <= 1e-9);
  }
  CHECK(max_deviation_on_unit_box(compose(power(s, -7), power(s, 7)), Similarityd::identity(2)) <= 1e-10);
  CHECK(max_deviation_on_unit_box(power(s, 0), Similarityd::identity(2)) == 0.0);
}

TEST_CASE("long composition chains stay orthogonal") {
  const Similarityd s = random_similarity(3);
  const Similarityd p = power(Similarityd(1.0, s.rotation(), s.offset()), 100000);
  CHECK(detail::orthogonality_drift(p.rotation()) <= 1e-10);
}

TEST_CASE("fixed points") {
  const auto origin = fixed_point(Similarityd::homothety(Vecd::Zero(2), 0.5));
  REQUIRE(origin);
  CHECK(origin->norm() <= 1e-15);

  Vecd t(2);
  t << 1, 0;
  CHECK_FALSE(fixed_point(Similarityd::translation(t)));

  Vecd b(2);
  b << 3.7, -1.2;
  const Similarityd s(2.0, rot2(M_PI / 3), b);
  const auto p = fixed_point(s);
  REQUIRE(p);
  CHECK((s(*p) - *p).norm() <= 1e-9 * (1 + p->norm()));

  for (int i = 0; i < 20; ++i) {
    const Similarityd c(0.9, random_rotation(3), random_vec(3));
    const auto q = fixed_point(c);
    REQUIRE(q);
    CHECK((c(*q) - *q).norm() <= 1e-9 * (1 + q->norm()));
  }
}

TEST_CASE("similarity constructor validates") {
  CHECK_THROWS_AS(Similarityd(0.0, Matd::Identity(2, 2), Vecd::Zero(2)), Error);
  CHECK_THROWS_AS(Similarityd(1.0, Matd::Identity(2, 2), Vecd::Zero(3)), Error);
  Matd skew = Matd::Identity(2, 2);
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(Similarityd(1.0, skew, Vecd::Zero(2)), Error);
  Matd reflect = Matd::Identity(2, 2);
  reflect(0, 0) = -1;
  CHECK_FALSE(Similarityd(1.0, reflect, Vecd::Zero(2)).orientation_preserving());
}

TEST_CASE("half-space normalization and images") {
  Vecd n(2);
  n << 3, 4;
  const HalfSpaced h(n, 10);
  CHECK(h.normal().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.offset() == doctest::Approx(2.0));
  CHECK_THROWS_AS(HalfSpaced(Vecd::Zero(2), 1.0), Error);

  Vecd e(1);
  e << 1;
  const HalfSpaced line(e, 1);
  const HalfSpaced doubled = apply_to_halfspace(Similarityd::homothety(Vecd::Zero(1), 2.0), line);
  CHECK(doubled.offset() == doctest::Approx(2.0));
  const HalfSpaced same = apply_to_halfspace(Similarityd::identity(2), h);
  CHECK((same.normal() - h.normal()).norm() == 0.0);
  CHECK(same.offset() == h.offset());
}

TEST_CASE("half-space images map boundary to boundary and preserve membership") {
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    const Similarityd s = random_similarity(n);
    const HalfSpaced h(random_vec(n), random_vec(1)(0));
    const HalfSpaced img = apply_to_halfspace(s, h);
    CHECK(img.normal().norm() == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i < 50; ++i) {
      Vecd x = random_vec(n, 3.0);
      x -= h.signed_distance(x) * h.normal();
      CHECK(std::abs(img.signed_distance(s(x))) <= 1e-10 * (1 + x.norm()));
      const Vecd y = random_vec(n, 3.0);
      if (std::abs(h.signed_distance(y)) > 1e-9) CHECK(h.contains(y) == img.contains(s(y)));
    }
  }
}

TEST_CASE("balls respect openness") {
  Balld b{Vecd::Zero(2), 1.0, Openness::Open};
  Vecd x(2);
  x << 1, 0;
  CHECK_FALSE(b.contains(x));
  b.openness = Openness::Closed;
  CHECK(b.contains(x));
}
