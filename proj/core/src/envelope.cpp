#include "bblab/envelope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "bblab/errors.hpp"
#include "bblab/hull.hpp"
#include "bblab/summation.hpp"

namespace bblab {

namespace {

using geometry::Int;
using geometry::Point2;
using geometry::Point3;

constexpr double kQuantum = 1125899906842624.0;  // 2^50

Int quantize(double v, double vmax) {
  return std::max<Int>(1, static_cast<Int>(std::llround(v / vmax * kQuantum)));
}

// Upper hull of (t_i, v_i) for strictly increasing integer t, with linear
// interpolation written into out(t) for every t between the first and last.
template <typename Out>
void envelope_1d(const std::vector<Int>& t, const std::vector<double>& v, double vmax, Out&& out) {
  std::vector<Point2> pts(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) pts[i] = {t[i], quantize(v[i], vmax)};
  const auto hull = geometry::upper_hull(pts);
  out(t[hull.front()], v[hull.front()]);
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const Int a = t[hull[k]], b = t[hull[k + 1]];
    const double va = v[hull[k]], vb = v[hull[k + 1]];
    for (Int x = a + 1; x <= b; ++x) {
      const double w = static_cast<double>(x - a) / static_cast<double>(b - a);
      out(x, x == b ? vb : va + (vb - va) * w);
    }
  }
}

GridFunction envelope1(const GridFunction& w) {
  std::vector<Int> t;
  std::vector<double> v;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.in_support(i)) {
      t.push_back(static_cast<Int>(i));
      v.push_back(w.values()[i]);
    }
  }
  std::vector<double> out(w.size(), 0.0);
  if (t.empty()) return w.with_values(std::move(out));
  envelope_1d(t, v, w.max_value(), [&](Int x, double value) { out[static_cast<std::size_t>(x)] = value; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], w.values()[i]);
  return w.with_values(std::move(out));
}

GridFunction envelope2(const GridFunction& w) {
  const std::size_t cols = w.shape()[1];
  const double vmax = w.max_value();
  std::vector<double> out(w.size(), 0.0);
  std::vector<Point2> support;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.in_support(i)) support.push_back({static_cast<Int>(i / cols), static_cast<Int>(i % cols)});
  }
  if (support.empty()) return w.with_values(std::move(out));
  auto flat = [cols](Int i, Int j) { return static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j); };

  const auto base = geometry::convex_hull_2d(support);
  if (base.size() < 3) {
    // Collinear support: a 1D envelope along the supporting line.
    const Point2 a = base.front();
    const Point2 d0 = base.size() == 1 ? Point2{0, 1} : Point2{base.back()[0] - a[0], base.back()[1] - a[1]};
    const Int g = std::gcd(std::abs(d0[0]), std::abs(d0[1]));
    const Point2 d{d0[0] / g, d0[1] / g};
    std::vector<std::pair<Int, double>> line;
    for (const auto& p : support) {
      const Int k = d[0] != 0 ? (p[0] - a[0]) / d[0] : (p[1] - a[1]) / d[1];
      line.push_back({k, w.values()[flat(p[0], p[1])]});
    }
    std::sort(line.begin(), line.end());
    std::vector<Int> t;
    std::vector<double> v;
    for (const auto& [k, value] : line) {
      t.push_back(k);
      v.push_back(value);
    }
    envelope_1d(t, v, vmax, [&](Int k, double value) {
      out[flat(a[0] + k * d[0], a[1] + k * d[1])] = value;
    });
  } else {
    std::vector<Point3> pts;
    pts.reserve(support.size() + base.size());
    for (const auto& p : support) pts.push_back({p[0], p[1], quantize(w.values()[flat(p[0], p[1])], vmax)});
    for (const auto& p : base) pts.push_back({p[0], p[1], 0});
    const auto hull = geometry::convex_hull_3d(std::move(pts));
    // Upper facets project onto a triangulation of the base polygon; each one
    // is rasterized and the value there is read off its plane.
    const long double to_value = static_cast<long double>(vmax) / kQuantum;
    std::vector<long double> best(w.size(), std::numeric_limits<long double>::infinity());
    for (std::size_t k = 0; k < hull.faces.size(); ++k) {
      const auto& plane = hull.planes[k];
      if (plane.nz <= 0) continue;
      std::array<Point2, 3> tri;
      for (int v = 0; v < 3; ++v) {
        const auto& q = hull.points[hull.faces[k][v]];
        tri[v] = {q[0], q[1]};
      }
      const Int lo0 = std::min({tri[0][0], tri[1][0], tri[2][0]});
      const Int hi0 = std::max({tri[0][0], tri[1][0], tri[2][0]});
      const Int lo1 = std::min({tri[0][1], tri[1][1], tri[2][1]});
      const Int hi1 = std::max({tri[0][1], tri[1][1], tri[2][1]});
      for (Int i = lo0; i <= hi0; ++i) {
        for (Int j = lo1; j <= hi1; ++j) {
          const Point2 q{i, j};
          if (geometry::cross(tri[0], tri[1], q) < 0 || geometry::cross(tri[1], tri[2], q) < 0 ||
              geometry::cross(tri[2], tri[0], q) < 0) {
            continue;
          }
          const auto z = static_cast<long double>(plane.offset - plane.nx * i - plane.ny * j) /
                         static_cast<long double>(plane.nz);
          auto& slot = best[flat(i, j)];
          slot = std::min(slot, z);
        }
      }
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (std::isfinite(best[i])) out[i] = static_cast<double>(std::max(0.0L, best[i] * to_value));
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], w.values()[i]);
  return w.with_values(std::move(out));
}

}  // namespace

GridFunction concave_envelope(const GridFunction& w) {
  if (w.dim() == 1) return envelope1(w);
  if (w.dim() == 2) return envelope2(w);
  throw DomainError("concave envelopes are supported in dimensions 1 and 2 only");
}

GridFunction p_concave_envelope(const GridFunction& f, double p) {
  if (!(p > 0) || !std::isfinite(p)) throw DomainError("concavity exponent p must be positive");
  std::vector<double> powered(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) powered[i] = f.in_support(i) ? std::pow(f.values()[i], p) : 0.0;
  // The threshold moves with the power so the support is unchanged.
  const GridFunction fp(f.origin(), f.spacing(), f.shape(), std::move(powered),
                        std::pow(f.zero_threshold(), p) * 0.5);
  const GridFunction env = concave_envelope(fp);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = env.values()[i];
    out[i] = v > 0 ? std::max(std::pow(v, 1.0 / p), f.values()[i]) : f.values()[i];
  }
  return f.with_values(std::move(out));
}

bool is_p_concave(const GridFunction& f, double p, double tol) {
  const double vmax = f.max_value();
  if (!(vmax > f.zero_threshold())) return true;
  std::vector<double> scaled(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) scaled[i] = f.values()[i] / vmax;
  const GridFunction g(f.origin(), f.spacing(), f.shape(), std::move(scaled), f.zero_threshold() / vmax);
  const GridFunction env = p_concave_envelope(g, p);
  double gap = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) gap = std::max(gap, env.values()[i] - g.values()[i]);
  return gap <= tol;
}

double envelope_deficit(const GridFunction& f, const GridFunction& u) {
  const auto [ef, eu] = on_common_grid(f, u);
  std::vector<double> gaps(ef.size());
  for (std::size_t i = 0; i < ef.size(); ++i) {
    const double d = eu.values()[i] - ef.values()[i];
    if (d < -1e-9) throw DomainError("majorant lies below the function");
    gaps[i] = std::max(0.0, d);
  }
  return ef.cell_volume() * pairwise_sum(gaps);
}

}  // namespace bblab
