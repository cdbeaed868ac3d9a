#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bblab/rational.hpp"
#include "bblab/voxel_set.hpp"

namespace bblab {

inline constexpr double kDefaultZeroThreshold = 1e-12;

/// Compactly supported nonnegative function sampled on a uniform grid.
///
/// Cell i (a multi-index) is the cube origin + [i, i+1) * spacing; its value is
/// taken as constant over the cube, sampled at the cube center. Values are
/// stored row-major (last axis fastest). Instances are immutable.
class GridFunction {
 public:
  GridFunction(std::vector<double> origin,
               double spacing,
               std::vector<std::size_t> shape,
               std::vector<double> values,
               double zero_threshold = kDefaultZeroThreshold);

  /// Samples fn at every cell center. fn receives the center as a span.
  template <typename Fn>
  static GridFunction sample(std::vector<double> origin,
                             double spacing,
                             std::vector<std::size_t> shape,
                             Fn&& fn,
                             double zero_threshold = kDefaultZeroThreshold);

  std::size_t dim() const { return shape_.size(); }
  const std::vector<double>& origin() const { return origin_; }
  double spacing() const { return spacing_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::span<const double> values() const { return values_; }
  double zero_threshold() const { return zero_threshold_; }
  std::size_t size() const { return values_.size(); }

  double cell_volume() const;
  double max_value() const;
  bool in_support(std::size_t flat) const { return values_[flat] > zero_threshold_; }
  bool is_zero() const;

  std::size_t flat_index(std::span<const std::int64_t> idx) const;
  void unravel(std::size_t flat, std::span<std::int64_t> idx) const;
  double center(std::size_t axis, std::int64_t i) const {
    return origin_[axis] + (static_cast<double>(i) + 0.5) * spacing_;
  }
  /// Value at a multi-index; zero outside the box.
  double at(std::span<const std::int64_t> idx) const;

  /// Same lattice and box, new values.
  GridFunction with_values(std::vector<double> values) const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::vector<double> origin_;
  double spacing_;
  std::vector<std::size_t> shape_;
  std::vector<double> values_;
  double zero_threshold_;
};

/// spacing^n * (sum of values), summed pairwise in row-major order.
double integrate(const GridFunction& f);

/// v(x) = mu^s f((x - shift) / mu). The result lives on the exact lattice image
/// (spacing mu*h, origin mu*o + shift), so no resampling happens.
GridFunction homothety(const GridFunction& f, double mu, std::span<const double> shift, double s);

/// The q-fold tensor product f(x_1) ... f(x_q) on the product grid.
/// Throws CapacityError when dim(f) * q exceeds max_dim.
GridFunction product_lift(const GridFunction& f, int q, std::size_t max_dim = 4);

/// Cells whose value exceeds the zero threshold, on the same lattice.
VoxelSet support_cells(const GridFunction& f);

// ---- lattice utilities ----------------------------------------------------

/// True when both grids share dimension and spacing and their origins differ
/// by an integer number of cells.
bool lattice_compatible(const GridFunction& a, const GridFunction& b);

/// Integer cell offset of `other` relative to `base` (other.origin - base.origin
/// in cells). Throws AlignmentError when the lattices differ.
std::vector<std::int64_t> lattice_offset(std::span<const double> base_origin,
                                         std::span<const double> other_origin,
                                         double spacing);

/// Re-indexes f onto an aligned box given by origin/shape; cells outside f are
/// zero, cells of f outside the box are dropped.
GridFunction embed(const GridFunction& f, std::vector<double> origin, std::vector<std::size_t> shape);

/// Both functions embedded on the union of their boxes.
std::pair<GridFunction, GridFunction> on_common_grid(const GridFunction& a, const GridFunction& b);

GridFunction pointwise_max(const GridFunction& a, const GridFunction& b);

/// Moves the grid by whole cells: result(x) = f(x - shift * spacing).
GridFunction shift_cells(const GridFunction& f, std::span<const std::int64_t> shift);

/// Nearest-cell resampling of the piecewise-constant f onto the lattice
/// anchor + k * spacing, over a box covering f's box.
GridFunction resample(const GridFunction& f, std::span<const double> anchor, double spacing);

/// Smallest box holding the support (a single zero cell when f vanishes).
GridFunction crop_to_support(const GridFunction& f);

/// Mass centroid. Throws DomainError for a zero function.
std::vector<double> centroid(const GridFunction& f);

/// Discrete total variation: sum over cell faces of |jump| times face area,
/// counting the jump to zero across the box boundary.
double total_variation(const GridFunction& f);

// ---- template implementation ---------------------------------------------

template <typename Fn>
GridFunction GridFunction::sample(std::vector<double> origin,
                                  double spacing,
                                  std::vector<std::size_t> shape,
                                  Fn&& fn,
                                  double zero_threshold) {
  std::size_t total = 1;
  for (auto n : shape) total *= n;
  std::vector<double> values(total);
  std::vector<double> x(shape.size());
  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < shape.size(); ++a) {
      x[a] = origin[a] + (static_cast<double>(idx[a]) + 0.5) * spacing;
    }
    values[flat] = fn(std::span<const double>(x));
    for (std::size_t a = shape.size(); a-- > 0;) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
  return GridFunction(std::move(origin), spacing, std::move(shape), std::move(values),
                      zero_threshold);
}

}  // namespace bblab
