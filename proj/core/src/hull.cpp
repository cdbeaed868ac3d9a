#include "bblab/hull.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>

namespace bblab::geometry {

std::vector<Point2> convex_hull_2d(std::vector<Point2> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 2) return points;
  std::vector<Point2> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
  return hull;
}

bool in_convex_polygon(std::span<const Point2> hull, const Point2& p) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return hull[0] == p;
  if (hull.size() == 2) {
    if (cross(hull[0], hull[1], p) != 0) return false;
    return std::min(hull[0][0], hull[1][0]) <= p[0] && p[0] <= std::max(hull[0][0], hull[1][0]) &&
           std::min(hull[0][1], hull[1][1]) <= p[1] && p[1] <= std::max(hull[0][1], hull[1][1]);
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (cross(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
  }
  return true;
}

std::vector<std::size_t> upper_hull(std::span<const Point2> points) {
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < points.size(); ++i) {
    while (hull.size() >= 2 &&
           cross(points[hull[hull.size() - 2]], points[hull.back()], points[i]) >= 0) {
      hull.pop_back();
    }
    hull.push_back(i);
  }
  return hull;
}

namespace {

Plane plane_through(const Point3& a, const Point3& b, const Point3& c) {
  const Wide ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  const Wide vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  Plane p;
  p.nx = uy * vz - uz * vy;
  p.ny = uz * vx - ux * vz;
  p.nz = ux * vy - uy * vx;
  p.offset = p.nx * a[0] + p.ny * a[1] + p.nz * a[2];
  return p;
}

bool collinear(const Point3& a, const Point3& b, const Point3& c) {
  const Plane p = plane_through(a, b, c);
  return p.nx == 0 && p.ny == 0 && p.nz == 0;
}

}  // namespace

Hull3 convex_hull_3d(std::vector<Point3> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Hull3 hull;
  hull.points = points;
  const std::size_t n = points.size();
  if (n == 0) return hull;

  // Seed simplex.
  std::size_t i1 = n, i2 = n, i3 = n;
  for (std::size_t i = 1; i < n; ++i) {
    if (points[i] != points[0]) {
      i1 = i;
      break;
    }
  }
  if (i1 == n) return hull;
  hull.affine_dim = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (!collinear(points[0], points[i1], points[i])) {
      i2 = i;
      break;
    }
  }
  if (i2 == n) return hull;
  hull.affine_dim = 2;
  const Plane base = plane_through(points[0], points[i1], points[i2]);
  for (std::size_t i = 1; i < n; ++i) {
    if (base.eval(points[i]) != 0) {
      i3 = i;
      break;
    }
  }
  if (i3 == n) return hull;
  hull.affine_dim = 3;

  // Quickhull: every face owns the points it sees; the furthest one is added
  // next and the visible region is found by walking face adjacency.
  struct Face {
    std::array<std::size_t, 3> v;
    Plane plane;
    bool alive = true;
    std::vector<std::size_t> outside;
  };
  std::vector<Face> faces;
  std::unordered_map<std::uint64_t, std::size_t> edge_face;  // directed edge -> face
  auto key = [n](std::size_t a, std::size_t b) { return static_cast<std::uint64_t>(a) * n + b; };
  auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    Face f;
    f.v = {a, b, c};
    f.plane = plane_through(points[a], points[b], points[c]);
    const std::size_t id = faces.size();
    edge_face[key(a, b)] = id;
    edge_face[key(b, c)] = id;
    edge_face[key(c, a)] = id;
    faces.push_back(std::move(f));
    return id;
  };

  const std::array<std::size_t, 4> seed{0, i1, i2, i3};
  const std::array<std::array<std::size_t, 4>, 4> tets{{{0, 1, 2, 3}, {0, 3, 1, 2}, {0, 2, 3, 1}, {1, 3, 2, 0}}};
  std::vector<std::size_t> pending;
  for (const auto& t : tets) {
    std::size_t a = seed[t[0]], b = seed[t[1]], c = seed[t[2]];
    const std::size_t d = seed[t[3]];
    if (plane_through(points[a], points[b], points[c]).eval(points[d]) > 0) std::swap(b, c);
    pending.push_back(add_face(a, b, c));
  }

  auto assign = [&](std::size_t pi, const std::vector<std::size_t>& candidates) {
    for (std::size_t fi : candidates) {
      if (faces[fi].plane.eval(points[pi]) > 0) {
        faces[fi].outside.push_back(pi);
        return;
      }
    }
  };
  for (std::size_t pi = 0; pi < n; ++pi) {
    if (pi == seed[0] || pi == seed[1] || pi == seed[2] || pi == seed[3]) continue;
    assign(pi, pending);
  }

  std::vector<std::size_t> stack = pending;
  std::vector<std::size_t> visible, created;
  std::vector<std::pair<std::size_t, std::size_t>> horizon;
  while (!stack.empty()) {
    const std::size_t f0 = stack.back();
    stack.pop_back();
    if (!faces[f0].alive || faces[f0].outside.empty()) continue;

    std::size_t far = faces[f0].outside.front();
    Wide best = faces[f0].plane.eval(points[far]);
    for (std::size_t pi : faces[f0].outside) {
      const Wide e = faces[f0].plane.eval(points[pi]);
      if (e > best) {
        best = e;
        far = pi;
      }
    }
    const Point3& p = points[far];

    visible.assign(1, f0);
    faces[f0].alive = false;
    horizon.clear();
    for (std::size_t k = 0; k < visible.size(); ++k) {
      const auto v = faces[visible[k]].v;
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = v[e], b = v[(e + 1) % 3];
        const std::size_t nb = edge_face.at(key(b, a));
        if (!faces[nb].alive) {
          continue;
        }
        if (faces[nb].plane.eval(p) > 0) {
          faces[nb].alive = false;
          visible.push_back(nb);
        } else {
          horizon.push_back({a, b});
        }
      }
    }
    // Edges shared by two visible faces were skipped above; an edge whose
    // neighbour turned visible after being recorded must be dropped again.
    std::erase_if(horizon, [&](const auto& e) { return !faces[edge_face.at(key(e.second, e.first))].alive; });
    for (std::size_t fi : visible) {
      const auto v = faces[fi].v;
      for (int e = 0; e < 3; ++e) {
        const auto it = edge_face.find(key(v[e], v[(e + 1) % 3]));
        if (it != edge_face.end() && it->second == fi) edge_face.erase(it);
      }
    }
    created.clear();
    for (const auto& [a, b] : horizon) created.push_back(add_face(a, b, far));
    for (std::size_t fi : visible) {
      for (std::size_t pi : faces[fi].outside) {
        if (pi != far) assign(pi, created);
      }
      faces[fi].outside.clear();
      faces[fi].outside.shrink_to_fit();
    }
    for (std::size_t fi : created) stack.push_back(fi);
  }

  for (const auto& f : faces) {
    if (!f.alive) continue;
    hull.faces.push_back(f.v);
    hull.planes.push_back(f.plane);
  }
  return hull;
}

bool in_hull(const Hull3& hull, const Point3& p) {
  if (hull.affine_dim < 3) return false;
  for (const auto& plane : hull.planes) {
    if (plane.eval(p) > 0) return false;
  }
  return true;
}

}  // namespace bblab::geometry
