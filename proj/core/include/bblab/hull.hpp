#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

// Exact convex hulls on integer coordinates. All predicates are evaluated in
// 128-bit integer arithmetic; coordinates must stay below 2^52 in magnitude
// along one axis and below 2^20 along the others for the products to fit.
namespace bblab::geometry {

using Int = std::int64_t;
__extension__ using Wide = __int128;
using Point2 = std::array<Int, 2>;
using Point3 = std::array<Int, 3>;

/// (a - o) x (b - o); positive for a counter-clockwise turn.
inline Wide cross(const Point2& o, const Point2& a, const Point2& b) {
  return static_cast<Wide>(a[0] - o[0]) * (b[1] - o[1]) -
         static_cast<Wide>(a[1] - o[1]) * (b[0] - o[0]);
}

/// Counter-clockwise hull without collinear vertices. One or two points are
/// returned as-is for degenerate inputs.
std::vector<Point2> convex_hull_2d(std::vector<Point2> points);

/// Boundary-inclusive membership in a hull produced by convex_hull_2d.
bool in_convex_polygon(std::span<const Point2> hull, const Point2& p);

/// Indices of the upper hull of points sorted by strictly increasing x.
std::vector<std::size_t> upper_hull(std::span<const Point2> points);

/// Supporting plane n.p <= offset of a hull facet (outward normal n).
struct Plane {
  Wide nx = 0;
  Wide ny = 0;
  Wide nz = 0;
  Wide offset = 0;

  Wide eval(const Point3& p) const { return nx * p[0] + ny * p[1] + nz * p[2] - offset; }
};

struct Hull3 {
  /// Affine dimension of the input (0..3); facets are only built for 3.
  int affine_dim = 0;
  std::vector<Point3> points;
  std::vector<std::array<std::size_t, 3>> faces;
  std::vector<Plane> planes;
};

/// Incremental 3D hull. Coplanar facets are kept triangulated.
Hull3 convex_hull_3d(std::vector<Point3> points);

/// Boundary-inclusive membership in a full-dimensional hull.
bool in_hull(const Hull3& hull, const Point3& p);

}  // namespace bblab::geometry
