#include "morpho/interval1d.hpp"

#include <algorithm>
#include <sstream>

#include "morpho/error.hpp"

namespace morpho {

namespace {

// lo endpoints: -inf first; at equal value a closed end reaches further left.
bool lo_less(const std::optional<Endpoint>& a, const std::optional<Endpoint>& b) {
  if (!a) return static_cast<bool>(b);
  if (!b) return false;
  if (a->value != b->value) return a->value < b->value;
  return a->closed && !b->closed;
}

// hi endpoints: +inf last; at equal value a closed end reaches further right.
bool hi_less(const std::optional<Endpoint>& a, const std::optional<Endpoint>& b) {
  if (!b) return static_cast<bool>(a);
  if (!a) return false;
  if (a->value != b->value) return a->value < b->value;
  return !a->closed && b->closed;
}

bool nonempty(const Interval& iv) {
  if (!iv.lo || !iv.hi) return true;
  if (iv.lo->value < iv.hi->value) return true;
  return iv.lo->value == iv.hi->value && iv.lo->closed && iv.hi->closed;
}

// Whether `next` (sorted after `cur`) overlaps or abuts it with no gap point.
bool connects(const Interval& cur, const Interval& next) {
  if (!cur.hi || !next.lo) return true;
  if (next.lo->value < cur.hi->value) return true;
  return next.lo->value == cur.hi->value && (cur.hi->closed || next.lo->closed);
}

void require_nonnegative(const Rational& r) {
  if (r < 0) throw Error(ErrorKind::InvalidRadius, "radius must be >= 0");
}

std::vector<Rational> symmetric_difference(const IntervalSet1D& a, const IntervalSet1D& b) {
  using Key = std::pair<Rational, int>;
  auto keys = [](const IntervalSet1D& s) {
    std::vector<Key> out;
    for (const auto& iv : s.intervals()) {
      if (iv.lo) out.emplace_back(iv.lo->value, iv.lo->closed ? 0 : 1);
      if (iv.hi) out.emplace_back(iv.hi->value, iv.hi->closed ? 2 : 3);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto ka = keys(a);
  const auto kb = keys(b);
  std::vector<Key> diff;
  std::set_symmetric_difference(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(diff));
  std::vector<Rational> out;
  for (const auto& k : diff)
    if (out.empty() || out.back() != k.first) out.push_back(k.first);
  return out;
}

std::optional<Rational> first_positive_endpoint(const IntervalSet1D& s, const Rational& w) {
  for (const Rational& e : s.endpoints())
    if (e > 0 && e < w) return e;
  return std::nullopt;
}

std::int64_t pow7(int j) {
  std::int64_t p = 1;
  for (int i = 0; i < j; ++i) p *= 7;
  return p;
}

void require_truncation(int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "truncation k must be >= 0");
  if (k > kMaxTruncation) throw Error(ErrorKind::TruncationTooLarge, "truncation k must be <= 8");
}

}  // namespace

namespace {

// Decimal digits only; cpp_int would read a leading zero as octal.
boost::multiprecision::cpp_int parse_integer(std::string t) {
  bool negative = false;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    negative = t[0] == '-';
    t.erase(0, 1);
  }
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(t);
  t.erase(0, std::min(t.find_first_not_of('0'), t.size() - 1));
  const boost::multiprecision::cpp_int v(t);
  return negative ? boost::multiprecision::cpp_int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::Parse, "empty number");
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const auto num = parse_integer(text.substr(0, slash));
      const auto den = parse_integer(text.substr(slash + 1));
      if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_integer(text));
    const bool negative = text[0] == '-';
    const std::size_t sign = negative || text[0] == '+' ? 1 : 0;
    std::string whole = text.substr(sign, dot - sign);
    const std::string frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.find_first_not_of("0123456789") != std::string::npos || frac.empty())
      throw Error(ErrorKind::Parse, "bad decimal '" + text + "'");
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational q(parse_integer(whole + frac), den);
    return negative ? Rational(-q) : q;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad number '" + text + "'");
  }
}

std::string format_rational(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool Interval::contains(const Rational& x) const {
  if (lo && (x < lo->value || (x == lo->value && !lo->closed))) return false;
  if (hi && (x > hi->value || (x == hi->value && !hi->closed))) return false;
  return true;
}

IntervalSet1D::IntervalSet1D(std::vector<Interval> pieces) {
  for (auto& iv : pieces) {
    // Infinite ends carry no closedness.
    if (iv.lo && iv.hi && iv.lo->value > iv.hi->value) continue;
    if (nonempty(iv)) pieces_.push_back(std::move(iv));
  }
  std::sort(pieces_.begin(), pieces_.end(), [](const Interval& a, const Interval& b) { return lo_less(a.lo, b.lo); });
  std::vector<Interval> merged;
  for (auto& iv : pieces_) {
    if (!merged.empty() && connects(merged.back(), iv)) {
      if (hi_less(merged.back().hi, iv.hi)) merged.back().hi = iv.hi;
    } else {
      merged.push_back(std::move(iv));
    }
  }
  pieces_ = std::move(merged);
}

bool IntervalSet1D::contains(const Rational& x) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& iv) { return iv.contains(x); });
}

std::vector<Rational> IntervalSet1D::endpoints() const {
  std::vector<Rational> out;
  for (const auto& iv : pieces_) {
    if (iv.lo) out.push_back(iv.lo->value);
    if (iv.hi) out.push_back(iv.hi->value);
  }
  return out;
}

IntervalSet1D complement(const IntervalSet1D& s) {
  std::vector<Interval> gaps;
  std::optional<Endpoint> lo;  // start of the current gap; empty means -inf
  bool open_gap = true;
  for (const auto& iv : s.intervals()) {
    if (!iv.lo) {
      open_gap = false;
    } else if (open_gap) {
      gaps.push_back(Interval{lo, Endpoint{iv.lo->value, !iv.lo->closed}});
    }
    if (!iv.hi) return IntervalSet1D(std::move(gaps));
    lo = Endpoint{iv.hi->value, !iv.hi->closed};
    open_gap = true;
  }
  gaps.push_back(Interval{lo, std::nullopt});
  return IntervalSet1D(std::move(gaps));
}

IntervalSet1D unite(const IntervalSet1D& a, const IntervalSet1D& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalSet1D(std::move(all));
}

IntervalSet1D intersect(const IntervalSet1D& a, const IntervalSet1D& b) {
  return complement(unite(complement(a), complement(b)));
}

IntervalSet1D erode1d(const IntervalSet1D& s, const Rational& r) {
  require_nonnegative(r);
  if (r == 0) return s;
  std::vector<Interval> out;
  for (const auto& iv : s.intervals()) {
    Interval e;
    if (iv.lo) e.lo = Endpoint{iv.lo->value + r, true};
    if (iv.hi) e.hi = Endpoint{iv.hi->value - r, true};
    out.push_back(e);
  }
  return IntervalSet1D(std::move(out));
}

IntervalSet1D expand1d(const IntervalSet1D& s, const Rational& r) {
  require_nonnegative(r);
  if (r == 0) return s;
  std::vector<Interval> out;
  for (const auto& iv : s.intervals()) {
    Interval e;
    if (iv.lo) e.lo = Endpoint{iv.lo->value - r, false};
    if (iv.hi) e.hi = Endpoint{iv.hi->value + r, false};
    out.push_back(e);
  }
  return IntervalSet1D(std::move(out));
}

IntervalSet1D scale1d(const IntervalSet1D& s, const Rational& c) {
  if (c <= 0) throw Error(ErrorKind::NonpositiveScale, "scale factor must be positive");
  std::vector<Interval> out;
  for (const auto& iv : s.intervals()) {
    Interval e;
    if (iv.lo) e.lo = Endpoint{iv.lo->value * c, iv.lo->closed};
    if (iv.hi) e.hi = Endpoint{iv.hi->value * c, iv.hi->closed};
    out.push_back(e);
  }
  return IntervalSet1D(std::move(out));
}

IntervalSet1D restrict_to(const IntervalSet1D& s, const Rational& w) {
  return intersect(s, IntervalSet1D({Interval::closed(-w, w)}));
}

std::vector<std::int64_t> subset_sums(int k) {
  require_truncation(k);
  std::vector<std::int64_t> sums{0};
  for (int j = 0; j <= k; ++j) {
    const std::int64_t t = 4 * pow7(j);
    std::vector<std::int64_t> next;
    next.reserve(sums.size() * 3);
    for (std::int64_t s : sums) {
      next.push_back(s - t);
      next.push_back(s);
      next.push_back(s + t);
    }
    sums = std::move(next);
  }
  std::sort(sums.begin(), sums.end());
  return sums;
}

Rational safe_window(int k) {
  require_truncation(k);
  std::int64_t retained = 0;
  for (int j = 0; j <= k; ++j) retained += 4 * pow7(j);
  return Rational(4 * pow7(k + 1) - retained);
}

IntervalSet1D build_A(int k) {
  std::vector<Interval> pts;
  for (std::int64_t s : subset_sums(k)) pts.push_back(Interval::closed(Rational(s), Rational(s)));
  return IntervalSet1D(std::move(pts));
}

IntervalSet1D build_Y(int k) { return expand1d(build_A(k), Rational(1)); }

std::pair<IntervalSet1D, GeneratorTruncation> build_X(int k) {
  return {complement(build_Y(k)), GeneratorTruncation{k, safe_window(k) - 10}};
}

bool Example1Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Example1Check& c) { return !c.required || c.holds; });
}

Example1Report verify_example1(int k) {
  if (k < 2) throw Error(ErrorKind::WindowTooSmall, "the scaled-copy checks need k >= 2");
  require_truncation(k);
  const IntervalSet1D y = build_Y(k);
  const auto [x, trunc] = build_X(k);

  Example1Report rep;
  rep.k = k;
  rep.window = trunc.window;

  // The truncated set is exact on (-safe, safe); an expansion by rho reads rho further out.
  auto check = [&](std::string name, const IntervalSet1D& lhs, const IntervalSet1D& base, const Rational& radius,
                   const Rational& factor, const Rational& w, bool required) {
    Example1Check c{std::move(name), radius, factor, w, required, false, {}};
    const IntervalSet1D a = restrict_to(lhs, w);
    const IntervalSet1D b = restrict_to(scale1d(base, factor), w);
    c.holds = a == b;
    if (!c.holds) c.mismatches = symmetric_difference(a, b);
    rep.checks.push_back(std::move(c));
  };

  check("E_2(Y) = 7 Y", expand1d(y, 2), y, 2, 7, trunc.window, true);
  check("e_2(X) = 7 X", erode1d(x, 2), x, 2, 7, trunc.window, true);
  if (k >= 3) {
    const Rational w2 = trunc.window - 10;
    check("e_16(X) = 49 X", erode1d(x, 16), x, 16, 49, w2, true);
    check("e_14(X) = 49 X", erode1d(x, 14), x, 14, 49, w2, false);
  }
  return rep;
}

std::optional<Rational> scaled_copy_factor(const IntervalSet1D& a, const IntervalSet1D& b, const Rational& w) {
  // Equality on a window holding the first positive endpoint of either side forces c = pa / pb.
  const auto pa = first_positive_endpoint(restrict_to(a, w), w);
  const auto pb = first_positive_endpoint(restrict_to(b, w), w);
  if (!pa || !pb) return std::nullopt;
  const Rational c = *pa / *pb;
  const Rational cw = c * w;
  const Rational wc = cw < w ? cw : w;
  if (restrict_to(a, wc) == restrict_to(scale1d(b, c), wc)) return c;
  return std::nullopt;
}

std::string to_text(const IntervalSet1D& s) {
  std::ostringstream out;
  out << "# format 1\n";
  for (const auto& iv : s.intervals()) {
    const bool plain = (!iv.lo || iv.lo->closed) && (!iv.hi || iv.hi->closed);
    const std::string lo = iv.lo ? format_rational(iv.lo->value) : "-inf";
    const std::string hi = iv.hi ? format_rational(iv.hi->value) : "+inf";
    if (plain) {
      out << lo << ' ' << hi << '\n';
    } else {
      out << (iv.lo && iv.lo->closed ? '[' : '(') << lo << ' ' << hi << (iv.hi && iv.hi->closed ? ']' : ')')
          << '\n';
    }
  }
  return out.str();
}

IntervalSet1D interval_set_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Interval> pieces;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra))
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected two endpoints");
    bool lo_closed = true, hi_closed = true;
    if (a.front() == '[' || a.front() == '(') {
      lo_closed = a.front() == '[';
      a.erase(0, 1);
    }
    if (b.back() == ']' || b.back() == ')') {
      hi_closed = b.back() == ']';
      b.pop_back();
    }
    try {
      Interval iv;
      if (a != "-inf") iv.lo = Endpoint{parse_rational(a), lo_closed};
      if (b != "+inf" && b != "inf") iv.hi = Endpoint{parse_rational(b), hi_closed};
      if (iv.lo && iv.hi && iv.lo->value > iv.hi->value)
        throw Error(ErrorKind::Parse, "lower endpoint exceeds upper endpoint");
      pieces.push_back(iv);
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return IntervalSet1D(std::move(pieces));
}

}  // namespace morpho
