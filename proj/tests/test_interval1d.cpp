#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "morpho/error.hpp"
#include "morpho/interval1d.hpp"

using namespace morpho;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

IntervalSet1D closed(std::initializer_list<std::pair<Rational, Rational>> xs) {
  std::vector<Interval> v;
  for (const auto& [a, b] : xs) v.push_back(Interval::closed(a, b));
  return IntervalSet1D(v);
}

IntervalSet1D open(std::initializer_list<std::pair<Rational, Rational>> xs) {
  std::vector<Interval> v;
  for (const auto& [a, b] : xs) v.push_back(Interval::open(a, b));
  return IntervalSet1D(v);
}

IntervalSet1D random_set(std::mt19937_64& g) {
  std::uniform_int_distribution<int> count(1, 6), num(-60, 60), den(1, 12), coin(0, 1), ray(0, 9);
  std::vector<Interval> pieces;
  const int m = count(g);
  for (int i = 0; i < m; ++i) {
    Rational a(num(g), den(g)), b(num(g), den(g));
    if (b < a) std::swap(a, b);
    Interval iv{Endpoint{a, coin(g) == 1}, Endpoint{b, coin(g) == 1}};
    if (ray(g) == 0) iv.lo.reset();
    if (ray(g) == 0) iv.hi.reset();
    pieces.push_back(iv);
  }
  return IntervalSet1D(pieces);
}

// Distance from x to the complement of s, or -1 if x is not in s; exact on rationals.
Rational depth(const IntervalSet1D& s, const Rational& x) {
  for (const auto& iv : s.intervals()) {
    if (!iv.contains(x)) continue;
    Rational d = -1;
    if (iv.lo) d = x - iv.lo->value;
    if (iv.hi && (d < 0 || iv.hi->value - x < d)) d = iv.hi->value - x;
    return d < 0 ? Rational(1000000) : d;
  }
  return -1;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == q(3, 4));
  CHECK(parse_rational("-0.25") == q(-1, 4));
  CHECK(parse_rational("7") == q(7));
  CHECK(parse_rational(".5") == q(1, 2));
  CHECK(parse_rational("010") == q(10));
  CHECK(parse_rational("-3/08") == q(-3, 8));
  CHECK(parse_rational("1.05") == q(21, 20));
  CHECK(format_rational(q(-6, 4)) == "-3/2");
  CHECK(format_rational(q(8)) == "8");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("normalization merges touching pieces") {
  const IntervalSet1D s = closed({{q(2), q(3)}, {q(0), q(1)}, {q(1), q(2)}});
  REQUIRE(s.intervals().size() == 1);
  CHECK(s.intervals()[0] == Interval::closed(q(0), q(3)));
  // (0,1) and (1,2) leave the point 1 out.
  CHECK(open({{q(0), q(1)}, {q(1), q(2)}}).intervals().size() == 2);
}

TEST_CASE("erosion examples") {
  CHECK(erode1d(closed({{q(0), q(10)}}), q(3)) == closed({{q(3), q(7)}}));
  CHECK(erode1d(closed({{q(0), q(1)}}), q(3, 5)).empty());
  const IntervalSet1D s = closed({{q(0), q(10)}});
  CHECK(erode1d(s, q(0)) == s);
}

TEST_CASE("expansion examples") {
  CHECK(expand1d(closed({{q(0), q(1)}, {q(2), q(3)}}), q(3, 5)) == open({{q(-3, 5), q(18, 5)}}));
  CHECK(expand1d(closed({{q(0), q(1)}, {q(3), q(4)}}), q(1, 2)) == open({{q(-1, 2), q(3, 2)}, {q(5, 2), q(9, 2)}}));
}

TEST_CASE("erosion keeps exactly the points at distance >= r from the complement") {
  std::mt19937_64 g(5);
  for (int t = 0; t < 100; ++t) {
    const IntervalSet1D s = random_set(g);
    const Rational r(static_cast<long>(g() % 40), 8);
    const IntervalSet1D e = erode1d(s, r);
    for (int i = -600; i <= 600; ++i) {
      const Rational x(i, 8);
      const Rational d = depth(s, x);
      CHECK(e.contains(x) == (d >= r && d >= 0 && (r > 0 || s.contains(x))));
    }
  }
}

TEST_CASE("duality holds exactly") {
  std::mt19937_64 g(9);
  for (int t = 0; t < 200; ++t) {
    const IntervalSet1D x = random_set(g);
    const Rational r(static_cast<long>(g() % 30), 4);
    CHECK(erode1d(x, r) == complement(expand1d(complement(x), r)));
    CHECK(complement(complement(x)) == x);
  }
}

TEST_CASE("scaling") {
  CHECK(scale1d(closed({{q(1), q(2)}}), q(7)) == closed({{q(7), q(14)}}));
  std::mt19937_64 g(3);
  const IntervalSet1D s = random_set(g);
  CHECK(scale1d(s, q(1)) == s);
  CHECK(scale1d(scale1d(s, q(7, 3)), q(3, 7)) == s);
  CHECK_THROWS_AS(scale1d(s, q(0)), Error);
}

TEST_CASE("subset sums") {
  CHECK(subset_sums(0) == std::vector<std::int64_t>{-4, 0, 4});
  CHECK(subset_sums(1) == std::vector<std::int64_t>{-32, -28, -24, -4, 0, 4, 24, 28, 32});
  const auto k2 = subset_sums(2);
  for (std::int64_t v : {164, 168, 172, 192, 196, 200, 220, 224, 228}) {
    CHECK(std::binary_search(k2.begin(), k2.end(), v));
    CHECK(std::binary_search(k2.begin(), k2.end(), -v));
  }
  CHECK(k2.size() == 27);
  CHECK_THROWS_AS(subset_sums(9), Error);
}

TEST_CASE("safe window agrees with a larger truncation") {
  CHECK(safe_window(2) == q(1144));
  for (int k : {1, 2, 3}) {
    const auto small = subset_sums(k), big = subset_sums(k + 2);
    const Rational w = safe_window(k);
    std::set<std::int64_t> a(small.begin(), small.end()), b;
    for (auto v : big)
      if (Rational(v) < w && Rational(-v) < w) b.insert(v);
    for (auto v : small)
      if (!(Rational(v) < w && Rational(-v) < w)) a.erase(v);
    CHECK(a == b);
  }
}

TEST_CASE("X, Y and A at small k") {
  const IntervalSet1D x0 = build_X(0).first;
  CHECK(restrict_to(x0, q(3)) == closed({{q(-3), q(-1)}, {q(1), q(3)}}));
  for (int k = 1; k <= 4; ++k) {
    const IntervalSet1D x = build_X(k).first;
    CHECK_FALSE(x.contains(q(0)));
    // Symmetry: mirror every endpoint.
    std::vector<Interval> mirrored;
    for (const auto& iv : x.intervals()) {
      Interval m;
      if (iv.hi) m.lo = Endpoint{-iv.hi->value, iv.hi->closed};
      if (iv.lo) m.hi = Endpoint{-iv.lo->value, iv.lo->closed};
      mirrored.push_back(m);
    }
    CHECK(IntervalSet1D(mirrored) == x);
  }
  const IntervalSet1D a = build_A(1);
  CHECK(a.intervals().size() == 9);
  CHECK(a.endpoints().size() == 18);
}

TEST_CASE("scaled-copy identities at k = 3") {
  const Example1Report rep = verify_example1(3);
  CHECK(rep.passed());
  bool saw_a = false, saw_b = false;
  for (const auto& c : rep.checks) {
    if (c.radius == q(2) && c.factor == q(7)) {
      CHECK(c.holds);
      CHECK(c.mismatches.empty());
      (c.name.find('Y') != std::string::npos ? saw_a : saw_b) = true;
    }
  }
  CHECK(saw_a);
  CHECK(saw_b);
  CHECK_THROWS_AS(verify_example1(1), Error);

  const IntervalSet1D y = build_Y(3);
  CHECK_FALSE(expand1d(y, q(2)) == y);
}

TEST_CASE("erosion by other radii is not a scaled copy") {
  const auto [x, trunc] = build_X(3);
  const Rational w = trunc.window;
  for (long rho : {1, 3, 5}) CHECK_FALSE(scaled_copy_factor(erode1d(x, q(rho)), x, w));
  const auto c = scaled_copy_factor(erode1d(x, q(2)), x, w);
  REQUIRE(c);
  CHECK(*c == q(7));
}

TEST_CASE("text format round trips") {
  std::mt19937_64 g(11);
  for (int t = 0; t < 50; ++t) {
    const IntervalSet1D s = random_set(g);
    CHECK(interval_set_from_text(to_text(s)) == s);
  }
  CHECK(interval_set_from_text("1/2 3/4\n-inf -7\n") ==
        IntervalSet1D({Interval::closed(q(1, 2), q(3, 4)), Interval{std::nullopt, Endpoint{q(-7), true}}}));
  CHECK_THROWS_AS(interval_set_from_text("1 2 3\n"), Error);
  CHECK_THROWS_AS(interval_set_from_text("3 1\n"), Error);
}
