#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bblab {

inline constexpr std::size_t kMaxDim = 4;

/// Integer multi-index of a lattice cell. Coordinates past the set's dimension
/// are always zero so that lexicographic order is well defined.
using Cell = std::array<std::int64_t, kMaxDim>;

/// Finite set of lattice cells origin + [c, c+1) * spacing in dimension m <= 4.
/// Cells are kept sorted lexicographically and unique.
class VoxelSet {
 public:
  VoxelSet(std::size_t dim, std::vector<double> origin, double spacing, std::vector<Cell> cells);

  /// Builds from cells that are already sorted and unique (checked in debug only).
  static VoxelSet from_sorted(std::size_t dim,
                              std::vector<double> origin,
                              double spacing,
                              std::vector<Cell> cells);

  std::size_t dim() const { return dim_; }
  const std::vector<double>& origin() const { return origin_; }
  double spacing() const { return spacing_; }
  std::span<const Cell> cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  double cell_volume() const;
  /// spacing^m * |cells|.
  double measure() const;
  bool contains(const Cell& c) const;
  double center(const Cell& c, std::size_t axis) const {
    return origin_[axis] + (static_cast<double>(c[axis]) + 0.5) * spacing_;
  }

  /// Per-axis inclusive index bounds; requires a nonempty set.
  void bounds(Cell& lo, Cell& hi) const;

  /// Same cells on a lattice scaled about the coordinate origin by `factor`.
  VoxelSet scaled(double factor) const;

  friend bool operator==(const VoxelSet&, const VoxelSet&) = default;

 private:
  VoxelSet() = default;

  std::size_t dim_ = 0;
  std::vector<double> origin_;
  double spacing_ = 1.0;
  std::vector<Cell> cells_;
};

/// Measure of the symmetric difference of two sets on the same lattice (the
/// origins may differ by whole cells). Throws AlignmentError otherwise.
double symmetric_difference_measure(const VoxelSet& a, const VoxelSet& b);

/// Number of cells of `inner` missing from `outer` (same lattice rules).
std::size_t count_not_contained(const VoxelSet& inner, const VoxelSet& outer);

}  // namespace bblab
