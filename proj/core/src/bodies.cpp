#include "bblab/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bblab/errors.hpp"
#include "bblab/means.hpp"
#include "refined_lattice.hpp"

namespace bblab {

namespace {

constexpr double kRadiusSlack = 1e-12;
constexpr std::size_t kMaxBitmapBits = std::size_t{1} << 32;

struct Run {
  Cell prefix;  // last used axis zeroed
  std::int64_t lo;
  std::int64_t hi;
};

std::vector<Run> runs_of(const VoxelSet& v) {
  std::vector<Run> runs;
  const std::size_t last = v.dim() - 1;
  for (const Cell& c : v.cells()) {
    Cell prefix = c;
    prefix[last] = 0;
    if (!runs.empty() && runs.back().prefix == prefix && runs.back().hi + 1 == c[last]) {
      runs.back().hi = c[last];
    } else {
      runs.push_back({prefix, c[last], c[last]});
    }
  }
  return runs;
}

class Bitmap {
 public:
  Bitmap(std::size_t dim, const Cell& lo, const Cell& hi) : dim_(dim), lo_(lo) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < dim; ++k) {
      extent_[k] = static_cast<std::size_t>(hi[k] - lo[k] + 1);
      total *= extent_[k];
      if (total > kMaxBitmapBits) throw CapacityError("Minkowski combination box is too large");
    }
    words_.assign((total + 63) / 64, 0);
  }

  // Marks cells (prefix, last in [from, to]) with prefix given in absolute indices.
  void set_row_range(const Cell& prefix, std::int64_t from, std::int64_t to) {
    std::size_t row = 0;
    for (std::size_t k = 0; k + 1 < dim_; ++k) {
      row = row * extent_[k] + static_cast<std::size_t>(prefix[k] - lo_[k]);
    }
    const std::size_t base = row * extent_[dim_ - 1];
    std::size_t a = base + static_cast<std::size_t>(from - lo_[dim_ - 1]);
    const std::size_t b = base + static_cast<std::size_t>(to - lo_[dim_ - 1]);
    while (a <= b) {
      const std::size_t w = a / 64;
      const std::size_t bit = a % 64;
      const std::size_t span = std::min<std::size_t>(64 - bit, b - a + 1);
      const std::uint64_t mask = span == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << span) - 1) << bit;
      words_[w] |= mask;
      a += span;
    }
  }

  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        const int bit = __builtin_ctzll(word);
        word &= word - 1;
        std::size_t flat = w * 64 + static_cast<std::size_t>(bit);
        Cell c{};
        for (std::size_t k = dim_; k-- > 0;) {
          c[k] = lo_[k] + static_cast<std::int64_t>(flat % extent_[k]);
          flat /= extent_[k];
        }
        out.push_back(c);
      }
    }
    return out;
  }

 private:
  std::size_t dim_;
  Cell lo_;
  std::array<std::size_t, kMaxDim> extent_{};
  std::vector<std::uint64_t> words_;
};

// Calls fn(offset) for every offset in [0, k)^count (remaining axes zero).
template <typename Fn>
void for_each_offset(std::size_t count, std::int64_t k, Fn&& fn) {
  Cell t{};
  while (true) {
    fn(t);
    std::size_t a = count;
    while (a-- > 0) {
      if (++t[a] < k) break;
      t[a] = 0;
    }
    if (a == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace

double unit_ball_measure(double s) {
  if (!(s > 0)) throw DomainError("unit ball dimension must be positive");
  return std::pow(std::numbers::pi, s / 2.0) / std::tgamma(s / 2.0 + 1.0);
}

const char* to_string(LiftSource source) {
  return source == LiftSource::graph_lift ? "graph-lift" : "product-lift";
}

const char* to_string(MinkowskiRule rule) {
  return rule == MinkowskiRule::cells ? "cells" : "centers";
}

LiftedBody lift_graph(const GridFunction& f, int s, std::size_t max_dim) {
  if (s < 1) throw DomainError("graph lift needs a positive integer fiber dimension");
  const std::size_t n = f.dim();
  const std::size_t m = n + static_cast<std::size_t>(s);
  if (m > max_dim || m > kMaxDim) {
    throw CapacityError("lifted body dimension " + std::to_string(m) + " exceeds the limit");
  }
  const double h = f.spacing();
  std::vector<double> origin(f.origin());
  origin.resize(m, -0.5 * h);

  const double inv_s = 1.0 / static_cast<double>(s);
  std::vector<Cell> cells;
  std::vector<std::int64_t> idx(n);
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    if (!f.in_support(flat)) continue;
    f.unravel(flat, idx);
    const double reach = std::pow(f.values()[flat], inv_s) / h * (1.0 + kRadiusSlack);
    const auto bound = static_cast<std::int64_t>(std::floor(reach));
    const double reach_sq = reach * reach;
    Cell c{};
    std::copy(idx.begin(), idx.end(), c.begin());
    // Lexicographic walk over the fiber box [-bound, bound]^s.
    for (std::size_t a = n; a < m; ++a) c[a] = -bound;
    while (true) {
      double norm_sq = 0.0;
      for (std::size_t a = n; a < m; ++a) norm_sq += static_cast<double>(c[a] * c[a]);
      if (norm_sq <= reach_sq) cells.push_back(c);
      std::size_t a = m;
      while (a-- > n) {
        if (++c[a] <= bound) break;
        c[a] = -bound;
      }
      if (a < n || a == static_cast<std::size_t>(-1)) break;
    }
  }
  LiftedBody body{VoxelSet::from_sorted(m, std::move(origin), h, std::move(cells)), n,
                  static_cast<std::size_t>(s), LiftSource::graph_lift};
  return body;
}

LiftedBody lift_product(const GridFunction& f, const ConcavityIndex& s, std::size_t max_dim) {
  if (!s.is_rational()) throw DomainError("product lift needs a rational s = p/q");
  const auto p = s.numerator();
  const auto q = s.denominator();
  const std::size_t m = f.dim() * static_cast<std::size_t>(q) + static_cast<std::size_t>(p);
  if (m > max_dim || m > kMaxDim) {
    throw CapacityError("product-lift body dimension nq+p = " + std::to_string(m) +
                        " exceeds the limit");
  }
  if (q == 1) return lift_graph(f, static_cast<int>(p), max_dim);
  LiftedBody body = lift_graph(product_lift(f, static_cast<int>(q), max_dim), static_cast<int>(p), max_dim);
  body.source = LiftSource::product_lift;
  return body;
}

VoxelSet minkowski_combine(const VoxelSet& a,
                           const VoxelSet& b,
                           const RationalWeight& lambda,
                           MinkowskiRule rule) {
  if (a.dim() != b.dim()) throw AlignmentError("Minkowski operands differ in dimension");
  auto lattice = detail::refined_lattice(a.origin(), b.origin(), a.spacing(), b.spacing(), lambda);
  const std::size_t m = a.dim();
  if (rule == MinkowskiRule::cells) {
    // Cube corners combine to (1-l) o_a + l o_b + gamma h/k, so the cell lattice
    // is unshifted; the center lattice sits half a coarse cell minus half a
    // refined cell above it.
    for (auto& o : lattice.origin) o -= 0.5 * a.spacing() - 0.5 * lattice.spacing;
  }
  if (a.empty() || b.empty()) return VoxelSet(m, lattice.origin, lattice.spacing, {});

  const std::int64_t ca = lattice.first_coeff;
  const std::int64_t cb = lattice.second_coeff;
  const std::int64_t k = lattice.refinement;
  const std::int64_t pad = rule == MinkowskiRule::cells ? k - 1 : 0;

  Cell lo_a, hi_a, lo_b, hi_b, lo{}, hi{};
  a.bounds(lo_a, hi_a);
  b.bounds(lo_b, hi_b);
  for (std::size_t d = 0; d < m; ++d) {
    lo[d] = ca * lo_a[d] + cb * lo_b[d];
    hi[d] = ca * hi_a[d] + cb * hi_b[d] + pad;
  }
  Bitmap bitmap(m, lo, hi);
  const auto runs_a = runs_of(a);
  const auto runs_b = runs_of(b);
  const std::size_t last = m - 1;

  for (const Run& ra : runs_a) {
    for (const Run& rb : runs_b) {
      Cell row{};
      for (std::size_t d = 0; d < last; ++d) row[d] = ca * ra.prefix[d] + cb * rb.prefix[d];
      if (rule == MinkowskiRule::cells) {
        // Consecutive cube starts along the last axis are at most
        // max(k-j, j) < k apart, so the union of the cubes is one interval.
        const std::int64_t from = ca * ra.lo + cb * rb.lo;
        const std::int64_t to = ca * ra.hi + cb * rb.hi + k - 1;
        for_each_offset(last, k, [&](const Cell& t) {
          Cell shifted = row;
          for (std::size_t d = 0; d < last; ++d) shifted[d] += t[d];
          bitmap.set_row_range(shifted, from, to);
        });
      } else if (cb == 1) {
        for (std::int64_t x = ra.lo; x <= ra.hi; ++x) {
          bitmap.set_row_range(row, ca * x + rb.lo, ca * x + rb.hi);
        }
      } else if (ca == 1) {
        for (std::int64_t y = rb.lo; y <= rb.hi; ++y) {
          bitmap.set_row_range(row, ra.lo + cb * y, ra.hi + cb * y);
        }
      } else {
        for (std::int64_t x = ra.lo; x <= ra.hi; ++x) {
          for (std::int64_t y = rb.lo; y <= rb.hi; ++y) {
            const std::int64_t g = ca * x + cb * y;
            bitmap.set_row_range(row, g, g);
          }
        }
      }
    }
  }
  return VoxelSet::from_sorted(m, lattice.origin, lattice.spacing, bitmap.cells());
}

BmDeficit bm_deficit(const VoxelSet& a, const VoxelSet& b, const RationalWeight& lambda) {
  if (a.empty() || b.empty()) throw DomainError("Brunn-Minkowski deficit needs nonempty sets");
  const VoxelSet s = minkowski_combine(a, b, lambda, MinkowskiRule::cells);
  BmDeficit out;
  out.measure_s = s.measure();
  out.rhs = q_mean(a.measure(), b.measure(), lambda.value(),
                   MeanOrder(1.0 / static_cast<double>(a.dim())));
  out.delta = (out.measure_s - out.rhs) / out.rhs;
  return out;
}

NormalizedBodies normalize_bodies(const VoxelSet& a, const VoxelSet& b, const RationalWeight& lambda) {
  if (a.empty() || b.empty()) throw DomainError("normalization needs nonempty sets");
  if (a.dim() != b.dim()) throw AlignmentError("bodies differ in dimension");
  const double inv_m = 1.0 / static_cast<double>(a.dim());
  const double ra = std::pow(a.measure(), inv_m);
  const double rb = std::pow(b.measure(), inv_m);
  NormalizedBodies out{a.scaled(1.0 / ra), b.scaled(1.0 / rb), 0.0, 1.0 / ra, 1.0 / rb};
  out.mu = lambda.complement() * ra / (lambda.complement() * ra + lambda.value() * rb);
  return out;
}

}  // namespace bblab
