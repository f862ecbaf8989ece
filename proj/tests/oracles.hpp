#pragma once

// Independent reference computations for the tests.  Nothing here uses the
// sheaf machinery; polynomials are plain coefficient vectors.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Coeffs = std::vector<std::int64_t>;  // index = exponent

inline Coeffs add(Coeffs a, const Coeffs& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

inline Coeffs trim(Coeffs a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Coeffs t_minus_one_pow(int k) {
  Coeffs r{1};
  for (int i = 0; i < k; ++i) r = mul(r, {-1, 1});
  return r;
}

/// h(t) = sum_i f_i (t - 1)^(n - i) for a simplicial complete fan whose
/// f-vector counts cones by dimension (f_0 = 1 for the origin).
inline Coeffs h_from_f(const std::vector<std::int64_t>& f) {
  const int n = static_cast<int>(f.size()) - 1;
  Coeffs h;
  for (int i = 0; i <= n; ++i) h = add(h, mul({f[static_cast<std::size_t>(i)]}, t_minus_one_pow(n - i)));
  return trim(h);
}

// ---------------------------------------------------------------------------
// Faces of the cube [-1,1]^3 as sign patterns: entry 0 marks a free
// coordinate, +-1 a fixed one.  Index 0 is the empty face.

struct Poset {
  std::vector<int> dim;                 // empty face has dimension -1
  std::vector<std::vector<bool>> less;  // strict order
};

inline Poset cube_faces() {
  Poset p;
  std::vector<std::vector<int>> patterns;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      for (int c = -1; c <= 1; ++c) patterns.push_back({a, b, c});
    }
  }
  const std::size_t m = patterns.size() + 1;
  p.dim.assign(m, -1);
  p.less.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    p.dim[i + 1] = static_cast<int>(std::count(patterns[i].begin(), patterns[i].end(), 0));
    p.less[0][i + 1] = true;
  }
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    for (std::size_t j = 0; j < patterns.size(); ++j) {
      bool below = i != j;
      for (int k = 0; k < 3; ++k) below = below && (patterns[j][k] == 0 || patterns[i][k] == patterns[j][k]);
      p.less[i + 1][j + 1] = below;
    }
  }
  return p;
}

/// Faces of an m-gon: empty, m vertices, m edges (edge i joins vertices i
/// and i+1), the polygon.
inline Poset polygon_faces(int m) {
  const auto um = static_cast<std::size_t>(m);
  const std::size_t size = 2 * um + 2;
  Poset p;
  p.dim.assign(size, -1);
  p.less.assign(size, std::vector<bool>(size, false));
  const std::size_t top = size - 1;
  p.dim[top] = 2;
  for (std::size_t i = 0; i < um; ++i) {
    const std::size_t v = 1 + i, e = 1 + um + i;
    p.dim[v] = 0;
    p.dim[e] = 1;
    p.less[0][v] = p.less[0][e] = true;
    p.less[v][e] = true;
    p.less[1 + (i + 1) % um][e] = true;
    p.less[v][top] = p.less[e][top] = true;
  }
  p.less[0][top] = true;
  return p;
}

inline Poset segment_faces() {
  Poset p;
  p.dim = {-1, 0, 0, 1};
  p.less.assign(4, std::vector<bool>(4, false));
  p.less[0][1] = p.less[0][2] = p.less[0][3] = p.less[1][3] = p.less[2][3] = true;
  return p;
}

/// Face poset of a product of polytopes: pairs of nonempty faces, ordered
/// componentwise, plus a new empty face at index 0.
inline Poset product(const Poset& a, const Poset& b) {
  std::vector<std::pair<std::size_t, std::size_t>> faces;
  for (std::size_t i = 0; i < a.dim.size(); ++i) {
    for (std::size_t j = 0; j < b.dim.size(); ++j) {
      if (a.dim[i] >= 0 && b.dim[j] >= 0) faces.emplace_back(i, j);
    }
  }
  const std::size_t m = faces.size() + 1;
  Poset p;
  p.dim.assign(m, -1);
  p.less.assign(m, std::vector<bool>(m, false));
  for (std::size_t x = 0; x < faces.size(); ++x) {
    p.dim[x + 1] = a.dim[faces[x].first] + b.dim[faces[x].second];
    p.less[0][x + 1] = true;
    for (std::size_t y = 0; y < faces.size(); ++y) {
      const auto [i, j] = faces[x];
      const auto [k, l] = faces[y];
      const bool le = (i == k || a.less[i][k]) && (j == l || b.less[j][l]);
      p.less[x + 1][y + 1] = le && x != y;
    }
  }
  return p;
}

/// Toric h of the top element via the g/h recursion on an Eulerian poset.
inline Coeffs toric_h(const Poset& p) {
  const std::size_t m = p.dim.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return p.dim[a] < p.dim[b]; });
  std::vector<Coeffs> h(m), g(m);
  std::size_t top = order.back();
  for (std::size_t q : order) {
    if (p.dim[q] == -1) {
      h[q] = g[q] = {1};
      continue;
    }
    Coeffs acc;
    for (std::size_t x = 0; x < m; ++x) {
      if (p.less[x][q]) acc = add(acc, mul(t_minus_one_pow(p.dim[q] - p.dim[x] - 1), g[x]));
    }
    h[q] = trim(acc);
    Coeffs gq;
    for (int j = 0; 2 * j <= p.dim[q]; ++j) {
      const auto at = [&](int k) { return k >= 0 && k < static_cast<int>(h[q].size()) ? h[q][k] : 0; };
      gq.push_back(at(j) - at(j - 1));
    }
    g[q] = trim(gq);
  }
  return h[top];
}

/// Dimension of degree-k conewise polynomials (k >= 1) on a complete
/// simplicial fan of R^2 with m rays: (k+1) per sector minus one
/// continuity condition per ray.
inline std::int64_t planar_spline_dim(std::int64_t m, std::int64_t k) { return k == 0 ? 1 : m * (k + 1) - m; }

// ---------------------------------------------------------------------------
// Seeded generators

struct Point {
  long x;
  long y;
};

inline long cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Strict convex hull, counterclockwise, collinear points dropped.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

/// A convex lattice polygon with the origin strictly inside, counterclockwise.
/// Its vertices are distinct directions, so it also gives a complete fan.
inline std::vector<Point> random_polygon(std::mt19937& rng, int radius, int samples) {
  // mt19937 output is fixed by the standard; distributions are not.
  const auto span = static_cast<std::uint32_t>(2 * radius + 1);
  auto coord = [&](std::mt19937& g) { return static_cast<long>(g() % span) - radius; };
  for (;;) {
    std::vector<Point> pts;
    for (int i = 0; i < samples; ++i) pts.push_back({coord(rng), coord(rng)});
    auto hull = convex_hull(pts);
    if (hull.size() < 3) continue;
    bool inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i) inside = inside && cross(hull[i], hull[(i + 1) % hull.size()], {0, 0}) > 0;
    if (inside) return hull;
  }
}

}  // namespace oracle
