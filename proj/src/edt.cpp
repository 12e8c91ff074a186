#include <cstdint>
#include <vector>

#include "morpho/raster.hpp"

namespace morpho {

namespace {

constexpr std::int64_t kInf64 = std::numeric_limits<std::int64_t>::max();

// Breakpoint between two parabolas as an exact fraction num / den with den > 0.
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool neg_inf = false;
};

bool leq(const Frac& a, const Frac& b) {
  if (b.neg_inf) return a.neg_inf;
  if (a.neg_inf) return true;
  return a.num * b.den <= b.num * a.den;
}

struct LineScratch {
  std::vector<std::int64_t> f, site_f, out;
  std::vector<std::int64_t> site;
  std::vector<Frac> z;
  void resize(int n) {
    f.resize(static_cast<std::size_t>(n));
    out.resize(static_cast<std::size_t>(n));
    site.resize(static_cast<std::size_t>(n) + 2);
    site_f.resize(static_cast<std::size_t>(n) + 2);
    z.resize(static_cast<std::size_t>(n) + 3);
  }
};

// Lower envelope of parabolas (x - q)^2 + f(q); virtual zero sites at -1 and n when border is set.
void transform_line(int n, bool border, LineScratch& s) {
  int k = -1;
  auto push = [&](std::int64_t q, std::int64_t fq) {
    while (k >= 0) {
      const std::int64_t p = s.site[static_cast<std::size_t>(k)];
      const std::int64_t fp = s.site_f[static_cast<std::size_t>(k)];
      Frac x{(fq + q * q) - (fp + p * p), 2 * (q - p), false};
      if (leq(x, s.z[static_cast<std::size_t>(k)])) {
        --k;
        continue;
      }
      ++k;
      s.site[static_cast<std::size_t>(k)] = q;
      s.site_f[static_cast<std::size_t>(k)] = fq;
      s.z[static_cast<std::size_t>(k)] = x;
      return;
    }
    k = 0;
    s.site[0] = q;
    s.site_f[0] = fq;
    s.z[0] = Frac{0, 1, true};
  };

  if (border) push(-1, 0);
  for (int q = 0; q < n; ++q)
    if (s.f[static_cast<std::size_t>(q)] != kInf64) push(q, s.f[static_cast<std::size_t>(q)]);
  if (border) push(n, 0);

  if (k < 0) {
    std::fill(s.out.begin(), s.out.end(), kInf64);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (j < k) {
      const Frac& b = s.z[static_cast<std::size_t>(j) + 1];
      if (b.num < static_cast<std::int64_t>(q) * b.den) ++j;
      else break;
    }
    const std::int64_t dq = q - s.site[static_cast<std::size_t>(j)];
    s.out[static_cast<std::size_t>(q)] = dq * dq + s.site_f[static_cast<std::size_t>(j)];
  }
}

// Real-valued variant without border sites: out(x) = min_q (x - q)^2 + f(q), f = +inf skips q.
void envelope_line(int n, const double* f, double* out, std::vector<int>& site, std::vector<double>& z) {
  const double inf = std::numeric_limits<double>::infinity();
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == inf) continue;
    for (;;) {
      if (k < 0) {
        site[0] = q;
        z[0] = -inf;
        k = 0;
        break;
      }
      const int p = site[static_cast<std::size_t>(k)];
      const double x = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (x <= z[static_cast<std::size_t>(k)]) {
        --k;
        continue;
      }
      ++k;
      site[static_cast<std::size_t>(k)] = q;
      z[static_cast<std::size_t>(k)] = x;
      break;
    }
  }
  if (k < 0) {
    std::fill(out, out + n, inf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (j < k && z[static_cast<std::size_t>(j) + 1] < q) ++j;
    const double dq = q - site[static_cast<std::size_t>(j)];
    out[q] = dq * dq + f[site[static_cast<std::size_t>(j)]];
  }
}

}  // namespace

namespace detail {

std::vector<double> squared_envelope(const RasterWindow& w, std::vector<double> f) {
  const auto strides = w.strides();
  for (int axis = 0; axis < w.dimension(); ++axis) {
    const int n = w.dims[static_cast<std::size_t>(axis)];
    const std::size_t stride = strides[static_cast<std::size_t>(axis)];
    const std::size_t lines = f.size() / static_cast<std::size_t>(n);
    parallel_for(lines, [&](std::size_t b, std::size_t e) {
      std::vector<double> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n) + 1);
      std::vector<int> site(static_cast<std::size_t>(n));
      for (std::size_t l = b; l < e; ++l) {
        const std::size_t base = l % stride + (l / stride) * stride * static_cast<std::size_t>(n);
        for (int q = 0; q < n; ++q) in[static_cast<std::size_t>(q)] = f[base + static_cast<std::size_t>(q) * stride];
        envelope_line(n, in.data(), out.data(), site, z);
        for (int q = 0; q < n; ++q) f[base + static_cast<std::size_t>(q) * stride] = out[static_cast<std::size_t>(q)];
      }
    });
  }
  return f;
}

}  // namespace detail

DistanceField edt(const RasterSet& rs, Phase phase, bool use_border) {
  const RasterWindow& w = rs.window();
  DistanceField field{w, std::vector<std::int32_t>(rs.size(), DistanceField::kInf)};
  const bool want = phase == Phase::Set;
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs[i] == want) field.squared[i] = 0;

  const bool border_is_phase =
      use_border && ((phase == Phase::Set) == (rs.border_policy() == BorderPolicy::Inside));
  const auto strides = w.strides();
  const int nd = w.dimension();

  for (int axis = 0; axis < nd; ++axis) {
    const int n = w.dims[static_cast<std::size_t>(axis)];
    const std::size_t stride = strides[static_cast<std::size_t>(axis)];
    const std::size_t lines = rs.size() / static_cast<std::size_t>(n);
    // Line l starts at the flat index with a zero coordinate along this axis.
    auto line_start = [&](std::size_t l) {
      const std::size_t lo = l % stride;
      const std::size_t hi = l / stride;
      return lo + hi * stride * static_cast<std::size_t>(n);
    };
    detail::parallel_for(lines, [&](std::size_t b, std::size_t e) {
      LineScratch s;
      s.resize(n);
      for (std::size_t l = b; l < e; ++l) {
        const std::size_t base = line_start(l);
        for (int q = 0; q < n; ++q) {
          const std::int32_t v = field.squared[base + static_cast<std::size_t>(q) * stride];
          s.f[static_cast<std::size_t>(q)] = v == DistanceField::kInf ? kInf64 : v;
        }
        transform_line(n, border_is_phase, s);
        for (int q = 0; q < n; ++q) {
          const std::int64_t v = s.out[static_cast<std::size_t>(q)];
          field.squared[base + static_cast<std::size_t>(q) * stride] =
              v >= DistanceField::kInf ? DistanceField::kInf : static_cast<std::int32_t>(v);
        }
      }
    });
  }
  return field;
}

}  // namespace morpho
