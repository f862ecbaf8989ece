#pragma once

// Small fans and polytopes used by the examples, the CLI and the tests.

#include <string>
#include <utility>
#include <vector>

#include "fanih/fan.hpp"

namespace fanih::corpus {

using IntRays = std::vector<std::vector<long>>;

inline std::vector<Vector> to_vectors(const IntRays& rays) {
  std::vector<Vector> out;
  for (const auto& r : rays) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

/// Complete fan of R^1.
inline FanPtr line_fan() { return make_fan(1, IntRays{{1}, {-1}}, {{0}, {1}}); }

/// Complete fan of R^2 by the coordinate quadrants.
inline FanPtr quadrant_fan() {
  return make_fan(2, IntRays{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

/// Complete fan of R^2 with rays e1, e2, -e1-e2.
inline FanPtr three_ray_fan() { return make_fan(2, IntRays{{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}); }

/// Complete fan of R^3 by the coordinate orthants.
inline FanPtr orthant_fan() {
  IntRays rays{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<RaySet> cones;
  for (std::size_t a : {0, 1}) {
    for (std::size_t b : {2, 3}) {
      for (std::size_t c : {4, 5}) cones.push_back({a, b, c});
    }
  }
  return make_fan(3, rays, cones);
}

/// Vertex i of the cube [-1,1]^3: bit k of i selects the sign of coordinate k.
inline IntRays cube_vertices() {
  IntRays v;
  for (int i = 0; i < 8; ++i) v.push_back({i & 1 ? 1 : -1, i & 2 ? 1 : -1, i & 4 ? 1 : -1});
  return v;
}

/// The four vertex indices of each square face, increasing.
inline std::vector<RaySet> cube_squares() {
  std::vector<RaySet> out;
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      RaySet s;
      for (std::size_t i = 0; i < 8; ++i) {
        if (((i >> axis) & 1) == static_cast<std::size_t>(side)) s.push_back(i);
      }
      out.push_back(s);
    }
  }
  return out;
}

/// Face fan of the 3-cube: cones over its six square faces.
inline FanPtr cube_face_fan() { return make_fan(3, cube_vertices(), cube_squares()); }

/// The cube face fan with every square cut along the diagonal through its
/// smallest-index vertex.
inline FanPtr triangulated_cube_fan() {
  std::vector<RaySet> cones;
  for (const auto& s : cube_squares()) {
    cones.push_back({s[0], s[1], s[3]});
    cones.push_back({s[0], s[2], s[3]});
  }
  return make_fan(3, cube_vertices(), cones);
}

/// Quadrant fan with the first quadrant split by the ray (1,1).
inline FanPtr subdivided_quadrant_fan() {
  return make_fan(2, IntRays{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}},
                  {{0, 4}, {4, 1}, {1, 2}, {2, 3}, {3, 0}});
}

/// Face fan of the triangular prism with vertices (p, +-1) over the triangle
/// p in {(1,0), (0,1), (-1,-1)}.
inline FanPtr prism_face_fan() {
  IntRays v{{1, 0, 1}, {0, 1, 1}, {-1, -1, 1}, {1, 0, -1}, {0, 1, -1}, {-1, -1, -1}};
  return make_fan(3, v, {{0, 1, 2}, {3, 4, 5}, {0, 1, 3, 4}, {1, 2, 4, 5}, {2, 0, 5, 3}});
}

/// Vertices of the lattice m-gon used for m = 3..8, in cyclic order.
inline IntRays polygon(int m) {
  switch (m) {
    case 3: return {{1, 0}, {0, 1}, {-1, -1}};
    case 4: return {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    case 5: return {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}};
    case 6: return {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    case 7: return {{2, 1}, {1, 2}, {-1, 2}, {-2, 1}, {-2, -1}, {-1, -2}, {1, -2}};
    case 8: return {{2, 1}, {1, 2}, {-1, 2}, {-2, 1}, {-2, -1}, {-1, -2}, {1, -2}, {2, -1}};
    default: throw Error(ErrorKind::Parse, "no bundled polygon with " + std::to_string(m) + " vertices");
  }
}

/// The fan [sigma] of the cone over polygon(m) placed at height 1.
inline FanPtr polygon_cone_fan(int m) { return cone_over_polytope(2, to_vectors(polygon(m))); }

/// Complete fan of R^2 over the edges of polygon(m) (the origin is interior).
inline FanPtr polygon_face_fan(int m) {
  const auto v = polygon(m);
  std::vector<RaySet> cones;
  for (std::size_t i = 0; i < v.size(); ++i) cones.push_back({i, (i + 1) % v.size()});
  return make_fan(2, v, cones);
}

struct Named {
  std::string name;
  FanPtr fan;
};

/// Complete fans of the corpus.
inline std::vector<Named> complete_fans() {
  std::vector<Named> out{{"line", line_fan()},
                         {"quadrant", quadrant_fan()},
                         {"three_ray", three_ray_fan()},
                         {"subdivided_quadrant", subdivided_quadrant_fan()},
                         {"orthant", orthant_fan()},
                         {"cube_face_fan", cube_face_fan()},
                         {"triangulated_cube", triangulated_cube_fan()},
                         {"prism_face_fan", prism_face_fan()}};
  for (int m = 5; m <= 8; ++m) out.push_back({"polygon_face_fan_" + std::to_string(m), polygon_face_fan(m)});
  return out;
}

/// Every corpus fan, complete or not.
inline std::vector<Named> all_fans() {
  std::vector<Named> out = complete_fans();
  for (int m = 3; m <= 8; ++m) out.push_back({"polygon_cone_" + std::to_string(m), polygon_cone_fan(m)});
  return out;
}

}  // namespace fanih::corpus
