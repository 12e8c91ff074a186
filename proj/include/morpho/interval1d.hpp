#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace morpho {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q" or a finite decimal such as "-0.25" exactly.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

struct Endpoint {
  Rational value;
  bool closed = true;
  bool operator==(const Endpoint&) const = default;
};

/// A nonempty interval; a missing endpoint is infinite on that side.
struct Interval {
  std::optional<Endpoint> lo;
  std::optional<Endpoint> hi;
  bool operator==(const Interval&) const = default;

  static Interval closed(const Rational& a, const Rational& b) { return {Endpoint{a, true}, Endpoint{b, true}}; }
  static Interval open(const Rational& a, const Rational& b) { return {Endpoint{a, false}, Endpoint{b, false}}; }
  bool contains(const Rational& x) const;
};

/// Sorted, disjoint, maximal union of intervals and rays with exact endpoints.
class IntervalSet1D {
 public:
  IntervalSet1D() = default;
  /// Normalizes: drops empty pieces, sorts, merges overlapping or touching pieces.
  explicit IntervalSet1D(std::vector<Interval> pieces);

  static IntervalSet1D everything() { return IntervalSet1D({Interval{}}); }

  const std::vector<Interval>& intervals() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  bool contains(const Rational& x) const;
  /// Every finite endpoint value in order.
  std::vector<Rational> endpoints() const;

  bool operator==(const IntervalSet1D&) const = default;

 private:
  std::vector<Interval> pieces_;
};

IntervalSet1D complement(const IntervalSet1D& s);
IntervalSet1D unite(const IntervalSet1D& a, const IntervalSet1D& b);
IntervalSet1D intersect(const IntervalSet1D& a, const IntervalSet1D& b);
IntervalSet1D erode1d(const IntervalSet1D& s, const Rational& r);
IntervalSet1D expand1d(const IntervalSet1D& s, const Rational& r);
IntervalSet1D scale1d(const IntervalSet1D& s, const Rational& c);
/// Intersection with the closed window [-w, w].
IntervalSet1D restrict_to(const IntervalSet1D& s, const Rational& w);

struct GeneratorTruncation {
  int k = 0;
  Rational window;
};

constexpr int kMaxTruncation = 8;

std::vector<std::int64_t> subset_sums(int k);
/// Bound below which the truncated subset-sum set agrees with the full one (exclusive).
Rational safe_window(int k);
IntervalSet1D build_A(int k);
IntervalSet1D build_Y(int k);
std::pair<IntervalSet1D, GeneratorTruncation> build_X(int k);

struct Example1Check {
  std::string name;
  Rational radius;
  Rational factor;
  Rational window;
  /// Informational checks do not affect the overall verdict.
  bool required = true;
  bool holds = false;
  std::vector<Rational> mismatches;
};

struct Example1Report {
  int k = 0;
  Rational window;
  std::vector<Example1Check> checks;
  bool passed() const;
};

Example1Report verify_example1(int k);

/// The unique c > 0 with a = c * b on [-w, w] if one exists.
std::optional<Rational> scaled_copy_factor(const IntervalSet1D& a, const IntervalSet1D& b, const Rational& w);

std::string to_text(const IntervalSet1D& s);
IntervalSet1D interval_set_from_text(const std::string& text);

}  // namespace morpho
