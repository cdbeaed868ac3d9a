#include "bblab/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bblab/bodies.hpp"
#include "bblab/errors.hpp"
#include "bblab/hull.hpp"

namespace bblab {

namespace {

Cell prefix_of(const Cell& c, std::size_t n) {
  Cell x{};
  std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n), x.begin());
  return x;
}

std::int64_t norm_sq(const Cell& c, std::size_t from, std::size_t to) {
  std::int64_t acc = 0;
  for (std::size_t a = from; a < to; ++a) acc += c[a] * c[a];
  return acc;
}

// Fiber offsets of dimension s ordered by (|j|^2, lexicographic), long enough
// to hold `needed` entries.
std::vector<Cell> fiber_order(std::size_t s, std::size_t needed) {
  std::int64_t radius = 1;
  while (true) {
    std::vector<Cell> pts;
    Cell c{};
    for (std::size_t a = 0; a < s; ++a) c[a] = -radius;
    while (true) {
      if (norm_sq(c, 0, s) <= radius * radius) pts.push_back(c);
      std::size_t a = s;
      while (a-- > 0) {
        if (++c[a] <= radius) break;
        c[a] = -radius;
      }
      if (a == static_cast<std::size_t>(-1)) break;
    }
    // Everything within the ball of this radius is enumerated, so the prefix
    // of the sorted list is exact as long as it is long enough.
    if (pts.size() >= needed) {
      std::sort(pts.begin(), pts.end(), [s](const Cell& l, const Cell& r) {
        const auto nl = norm_sq(l, 0, s);
        const auto nr = norm_sq(r, 0, s);
        return nl != nr ? nl < nr : l < r;
      });
      pts.resize(needed);
      return pts;
    }
    radius *= 2;
  }
}

}  // namespace

SplitBody::SplitBody(VoxelSet voxels, std::size_t n_split)
    : voxels_(std::move(voxels)), n_split_(n_split) {
  if (n_split_ < 1 || n_split_ >= voxels_.dim()) {
    throw DomainError("split index must satisfy 1 <= n_split < dim");
  }
}

std::vector<Slice> slices(const SplitBody& c) {
  std::vector<Slice> out;
  for (const Cell& cell : c.voxels().cells()) {
    const Cell x = prefix_of(cell, c.n_split());
    if (!out.empty() && out.back().x == x) {
      ++out.back().count;
    } else {
      out.push_back({x, 1});
    }
  }
  return out;
}

double slice_radius(const SplitBody& c, std::span<const std::int64_t> x) {
  if (x.size() != c.n_split()) throw DomainError("slice index must have n_split coordinates");
  Cell key{};
  std::copy(x.begin(), x.end(), key.begin());
  const auto cells = c.voxels().cells();
  // Cells of one slice are contiguous in lexicographic order.
  const auto first = std::lower_bound(cells.begin(), cells.end(), key);
  std::size_t count = 0;
  for (auto it = first; it != cells.end() && prefix_of(*it, c.n_split()) == key; ++it) ++count;
  if (count == 0) return 0.0;
  const double s = static_cast<double>(c.fiber_dim());
  const double measure = static_cast<double>(count) * std::pow(c.voxels().spacing(), s);
  return std::pow(measure / unit_ball_measure(s), 1.0 / s);
}

SplitBody s_symmetrize(const SplitBody& c) {
  const std::size_t n = c.n_split();
  const std::size_t s = c.fiber_dim();
  const auto sl = slices(c);
  std::size_t widest = 0;
  for (const auto& slice : sl) widest = std::max(widest, slice.count);
  const auto order = fiber_order(s, widest);

  std::vector<Cell> cells;
  cells.reserve(c.voxels().size());
  std::vector<Cell> column;
  for (const auto& slice : sl) {
    column.clear();
    for (std::size_t i = 0; i < slice.count; ++i) {
      Cell cell = slice.x;
      for (std::size_t a = 0; a < s; ++a) cell[n + a] = order[i][a];
      column.push_back(cell);
    }
    std::sort(column.begin(), column.end());
    cells.insert(cells.end(), column.begin(), column.end());
  }
  std::vector<double> origin(c.voxels().origin());
  for (std::size_t a = n; a < origin.size(); ++a) origin[a] = -0.5 * c.voxels().spacing();
  return SplitBody(VoxelSet::from_sorted(c.voxels().dim(), std::move(origin), c.voxels().spacing(),
                                         std::move(cells)),
                   n);
}

GridFunction body_from_symmetric(const SplitBody& c) {
  if (!c.voxels().empty() && !(s_symmetrize(c) == c)) throw DomainError("body is not S-symmetric");
  const std::size_t n = c.n_split();
  const double h = c.voxels().spacing();
  std::vector<double> origin(c.voxels().origin().begin(),
                             c.voxels().origin().begin() + static_cast<std::ptrdiff_t>(n));
  if (c.voxels().empty()) {
    return GridFunction(std::move(origin), h, std::vector<std::size_t>(n, 1), {0.0});
  }
  const auto sl = slices(c);
  Cell lo = sl.front().x, hi = sl.front().x;
  for (const auto& slice : sl) {
    for (std::size_t a = 0; a < n; ++a) {
      lo[a] = std::min(lo[a], slice.x[a]);
      hi[a] = std::max(hi[a], slice.x[a]);
    }
  }
  std::vector<std::size_t> shape(n);
  for (std::size_t a = 0; a < n; ++a) {
    origin[a] += static_cast<double>(lo[a]) * h;
    shape[a] = static_cast<std::size_t>(hi[a] - lo[a] + 1);
  }
  std::size_t total = 1;
  for (auto e : shape) total *= e;
  std::vector<double> values(total, 0.0);
  const double s = static_cast<double>(c.fiber_dim());
  const double cell_measure = std::pow(h, s);
  const double omega = unit_ball_measure(s);
  for (const auto& slice : sl) {
    // A nonempty symmetric slice always contains the centered cell y = 0.
    std::size_t flat = 0;
    for (std::size_t a = 0; a < n; ++a) flat = flat * shape[a] + static_cast<std::size_t>(slice.x[a] - lo[a]);
    values[flat] = static_cast<double>(slice.count) * cell_measure / omega;
  }
  return GridFunction(std::move(origin), h, std::move(shape), std::move(values));
}

ConvexityCheck check_convexity(const VoxelSet& body) {
  using namespace geometry;
  const std::size_t m = body.dim();
  if (m > 3) throw DomainError("convexity check supports dimensions 1 to 3");
  ConvexityCheck out;
  if (body.empty()) return out;

  Cell lo, hi;
  body.bounds(lo, hi);
  std::vector<Cell> hull_cells;

  if (m == 1) {
    for (std::int64_t i = lo[0]; i <= hi[0]; ++i) hull_cells.push_back(Cell{i, 0, 0, 0});
  } else if (m == 2) {
    std::vector<Point2> pts;
    for (const Cell& c : body.cells()) pts.push_back({c[0], c[1]});
    const auto hull = convex_hull_2d(std::move(pts));
    for (std::int64_t i = lo[0]; i <= hi[0]; ++i) {
      for (std::int64_t j = lo[1]; j <= hi[1]; ++j) {
        if (in_convex_polygon(hull, {i, j})) hull_cells.push_back(Cell{i, j, 0, 0});
      }
    }
  } else {
    // Only the two ends of each z-column can be hull vertices.
    std::vector<Point3> pts;
    const auto cells = body.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const bool first = i == 0 || cells[i - 1][0] != cells[i][0] || cells[i - 1][1] != cells[i][1];
      const bool last = i + 1 == cells.size() || cells[i + 1][0] != cells[i][0] ||
                        cells[i + 1][1] != cells[i][1];
      if (first || last) pts.push_back({cells[i][0], cells[i][1], cells[i][2]});
    }
    const auto hull = convex_hull_3d(pts);
    if (hull.affine_dim == 3) {
      for (std::int64_t i = lo[0]; i <= hi[0]; ++i) {
        for (std::int64_t j = lo[1]; j <= hi[1]; ++j) {
          for (std::int64_t k = lo[2]; k <= hi[2]; ++k) {
            if (in_hull(hull, {i, j, k})) hull_cells.push_back(Cell{i, j, k, 0});
          }
        }
      }
    } else {
      // Flat bodies: fall back to the axis-aligned plane or line they span.
      std::size_t flat_axis = 3;
      for (std::size_t a = 0; a < 3; ++a) {
        if (lo[a] == hi[a]) flat_axis = a;
      }
      if (flat_axis == 3) throw DomainError("convexity check on an oblique flat body");
      std::array<std::size_t, 2> keep{};
      for (std::size_t a = 0, t = 0; a < 3; ++a) {
        if (a != flat_axis) keep[t++] = a;
      }
      std::vector<Point2> pts2;
      for (const Cell& c : body.cells()) pts2.push_back({c[keep[0]], c[keep[1]]});
      const auto hull2 = convex_hull_2d(std::move(pts2));
      for (std::int64_t i = lo[keep[0]]; i <= hi[keep[0]]; ++i) {
        for (std::int64_t j = lo[keep[1]]; j <= hi[keep[1]]; ++j) {
          if (!in_convex_polygon(hull2, {i, j})) continue;
          Cell c{};
          c[flat_axis] = lo[flat_axis];
          c[keep[0]] = i;
          c[keep[1]] = j;
          hull_cells.push_back(c);
        }
      }
    }
  }
  std::sort(hull_cells.begin(), hull_cells.end());
  out.hull_cells = hull_cells.size();

  auto in_hull_vox = [&](const Cell& c) {
    return std::binary_search(hull_cells.begin(), hull_cells.end(), c);
  };
  for (const Cell& c : hull_cells) {
    if (body.contains(c)) continue;
    ++out.missing_cells;
    bool on_shell = false;
    Cell d{};
    for (std::size_t a = 0; a < m; ++a) d[a] = -1;
    while (!on_shell) {
      bool zero = true;
      Cell nb = c;
      for (std::size_t a = 0; a < m; ++a) {
        nb[a] += d[a];
        zero = zero && d[a] == 0;
      }
      if (!zero && !in_hull_vox(nb)) on_shell = true;
      std::size_t a = m;
      while (a-- > 0) {
        if (++d[a] <= 1) break;
        d[a] = -1;
      }
      if (a == static_cast<std::size_t>(-1)) break;
    }
    if (!on_shell) ++out.missing_off_shell;
  }
  return out;
}

double radius_midpoint_violation(const SplitBody& c) {
  const auto sl = slices(c);
  const std::size_t n = c.n_split();
  std::map<Cell, double> radius;
  for (const auto& slice : sl) {
    std::vector<std::int64_t> x(slice.x.begin(), slice.x.begin() + static_cast<std::ptrdiff_t>(n));
    radius[slice.x] = slice_radius(c, x);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < sl.size(); ++i) {
    for (std::size_t j = i + 1; j < sl.size(); ++j) {
      Cell mid{};
      bool lattice = true;
      for (std::size_t a = 0; a < n; ++a) {
        const std::int64_t sum = sl[i].x[a] + sl[j].x[a];
        if (sum % 2 != 0) lattice = false;
        mid[a] = sum / 2;
      }
      if (!lattice) continue;
      const auto it = radius.find(mid);
      const double r_mid = it == radius.end() ? 0.0 : it->second;
      const double gap = 0.5 * (radius[sl[i].x] + radius[sl[j].x]) - r_mid;
      worst = std::max(worst, gap / c.voxels().spacing());
    }
  }
  return worst;
}

}  // namespace bblab
