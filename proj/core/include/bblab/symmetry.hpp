#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bblab/grid_function.hpp"
#include "bblab/voxel_set.hpp"

namespace bblab {

/// A voxel body in R^(n+s) split as (x, y): the first n_split axes are x, the
/// remaining s axes form the fiber.
class SplitBody {
 public:
  SplitBody(VoxelSet voxels, std::size_t n_split);

  const VoxelSet& voxels() const { return voxels_; }
  std::size_t n_split() const { return n_split_; }
  std::size_t fiber_dim() const { return voxels_.dim() - n_split_; }

  friend bool operator==(const SplitBody&, const SplitBody&) = default;

 private:
  VoxelSet voxels_;
  std::size_t n_split_;
};

/// Slice C(x) over one x cell with its cell count.
struct Slice {
  Cell x{};  // fiber coordinates zero
  std::size_t count = 0;
};

/// Nonempty slices in lexicographic order of x.
std::vector<Slice> slices(const SplitBody& c);

/// r_C(x) = (|C(x)| / omega_s)^(1/s); zero for an empty slice.
double slice_radius(const SplitBody& c, std::span<const std::int64_t> x);

/// Discrete S-symmetrization: every slice is replaced by the same number of
/// fiber cells, taken by increasing |y| (ties broken lexicographically) on the
/// centered fiber lattice (one cell centered at y = 0). Measure is preserved
/// exactly, slice by slice.
SplitBody s_symmetrize(const SplitBody& c);

/// u(x) = r_C(x)^s on the slices through y = 0, zero elsewhere.
/// Throws DomainError unless c is a fixed point of s_symmetrize.
GridFunction body_from_symmetric(const SplitBody& c);

/// Comparison of a voxel body with the voxelization of the convex hull of its
/// cell centers.
struct ConvexityCheck {
  std::size_t hull_cells = 0;         // cells whose center lies in the hull
  std::size_t missing_cells = 0;      // hull cells absent from the body
  std::size_t missing_off_shell = 0;  // missing cells not on the hull's outer shell
};

/// Supports dimensions 1..3. A missing cell is on the outer shell when one of
/// its 3^m - 1 neighbours lies outside the hull voxelization.
ConvexityCheck check_convexity(const VoxelSet& body);

/// Largest violation, in units of the spacing, of discrete midpoint concavity
/// (r(x0) + r(x1)) / 2 <= r((x0 + x1) / 2) over all pairs of nonempty slices
/// whose midpoint is a lattice cell and whose segment stays in the x-support.
double radius_midpoint_violation(const SplitBody& c);

}  // namespace bblab
