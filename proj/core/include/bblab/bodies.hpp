#pragma once

#include <cstddef>

#include "bblab/grid_function.hpp"
#include "bblab/rational.hpp"
#include "bblab/voxel_set.hpp"

namespace bblab {

/// Lebesgue measure of the unit ball of R^s, pi^(s/2) / Gamma(s/2 + 1).
double unit_ball_measure(double s);

enum class LiftSource { graph_lift, product_lift };

const char* to_string(LiftSource source);

/// Rotationally symmetric body over a function: coordinates (x, y) with x in
/// the function's grid (n_split axes) and y in a fiber of fiber_dim axes.
///
/// Fiber lattices are centered: one cell is centered at y = 0 and fiber cell j
/// has center j * spacing, so every fiber is symmetric under y -> -y.
struct LiftedBody {
  VoxelSet voxels;
  std::size_t n_split = 0;
  std::size_t fiber_dim = 0;
  LiftSource source = LiftSource::graph_lift;
};

/// The body {(x, y) : |y| <= f(x)^(1/s)} sampled at cell centers. Its measure
/// tends to omega_s * integral(f) under refinement.
/// Throws CapacityError when n + s exceeds max_dim.
LiftedBody lift_graph(const GridFunction& f, int s, std::size_t max_dim = 4);

/// lift_graph(product_lift(f, q), p) for s = p/q.
LiftedBody lift_product(const GridFunction& f, const ConcavityIndex& s, std::size_t max_dim = 4);

/// How a voxel set is read when forming (1-l) A + l B.
///
/// `cells` treats each voxel as its closed cube, so the combination is the exact
/// Minkowski combination of the two unions of cubes. `centers` treats each
/// voxel as its center point, which matches center-sampled bodies such as
/// lift_graph output.
enum class MinkowskiRule { cells, centers };

const char* to_string(MinkowskiRule rule);

/// (1-l) A + l B on the lattice refined by the weight denominator k; the result
/// has spacing h/k. Integer lattice arithmetic only.
/// Throws AlignmentError on spacing/dimension mismatch, CapacityError for k > 16.
VoxelSet minkowski_combine(const VoxelSet& a,
                           const VoxelSet& b,
                           const RationalWeight& lambda,
                           MinkowskiRule rule = MinkowskiRule::cells);

struct BmDeficit {
  double measure_s = 0.0;
  double rhs = 0.0;    // ((1-l)|A|^(1/m) + l|B|^(1/m))^m
  double delta = 0.0;  // (|S| - rhs) / rhs
};

/// Brunn-Minkowski gap of S = (1-l) A + l B (cube rule).
BmDeficit bm_deficit(const VoxelSet& a, const VoxelSet& b, const RationalWeight& lambda);

struct NormalizedBodies {
  VoxelSet a;
  VoxelSet b;
  double mu = 0.0;       // (1-l)|A|^(1/m) / ((1-l)|A|^(1/m) + l|B|^(1/m))
  double scale_a = 0.0;  // |A|^(-1/m)
  double scale_b = 0.0;  // |B|^(-1/m)
};

/// Unit-measure homothetic copies of A and B with the weight mu for which
/// mu A~ + (1-mu) B~ = S / ((1-l)|A|^(1/m) + l|B|^(1/m)).
/// The copies are exact: cells are kept and the lattice is rescaled.
NormalizedBodies normalize_bodies(const VoxelSet& a, const VoxelSet& b, const RationalWeight& lambda);

}  // namespace bblab
