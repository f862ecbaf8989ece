#pragma once

// Rational polyhedral fans as finite posets: face lattices, stars and
// boundaries, incidence signs, subdivisions and boundary projections.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fanih/error.hpp"
#include "fanih/linalg.hpp"

namespace fanih {

using ConeId = std::size_t;
using RaySet = std::vector<std::size_t>;

struct Cone {
  ConeId id = 0;
  RaySet rays;  // sorted indices into the fan's ray table
  int dim = 0;
  std::vector<Vector> span_basis;   // coordinates for polynomial functions on Span
  std::vector<Vector> orientation;  // ordered basis fixing the incidence signs
  // lifts[j] is an ambient linear form restricting to the j-th coordinate
  // function of span_basis on Span.
  std::vector<Vector> lifts;
  std::vector<Vector> facet_normals;  // >= 0 on the cone, one per facet
  std::vector<Vector> equations;      // basis of the forms vanishing on Span
};

struct Cover {
  ConeId face;
  ConeId cone;
};

namespace detail {

inline std::string describe(const RaySet& rays) {
  std::string s = "{";
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(rays[i]);
  }
  return s + "}";
}

// Greedy lexicographic basis of the span of the given generators.
inline std::vector<Vector> greedy_basis(std::vector<Vector> gens, std::size_t n) {
  std::sort(gens.begin(), gens.end());
  std::vector<Vector> basis;
  for (auto& g : gens) {
    basis.push_back(g);
    if (rank(Matrix::from_columns(basis, n)) < basis.size()) basis.pop_back();
  }
  return basis;
}

// Forms u_j with u_j . b_k = delta_jk, taken in Span(b) itself.
inline std::vector<Vector> dual_lifts(const std::vector<Vector>& basis, std::size_t n) {
  const std::size_t d = basis.size();
  if (d == 0) return {};
  Matrix b = Matrix::from_columns(basis, n);
  Matrix gram = b.transpose() * b;
  auto inv = solve(gram, Matrix::identity(d));
  Matrix u = b * *inv;
  std::vector<Vector> lifts;
  for (std::size_t j = 0; j < d; ++j) lifts.push_back(u.column(j));
  return lifts;
}

inline std::vector<Vector> orthogonal_complement(const std::vector<Vector>& basis, std::size_t n) {
  if (basis.empty()) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(n);
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  Kernel k = kernel(Matrix::from_rows(basis, n), n);
  std::vector<Vector> out;
  for (std::size_t j = 0; j < k.dim(); ++j) out.push_back(k.basis.column(j));
  return out;
}

// Iterates over all k-subsets of {0..m-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    f(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct ConeGeometry {
  std::vector<Vector> basis;
  std::vector<Vector> lifts;
  std::vector<Vector> facet_normals;
  std::vector<RaySet> facets;
};

// Facets by brute-force double description: every facet hyperplane is spanned
// by d-1 independent generators.
inline ConeGeometry cone_geometry(const std::vector<Vector>& all_rays, const RaySet& ids, std::size_t n) {
  ConeGeometry g;
  std::vector<Vector> gens;
  for (auto i : ids) gens.push_back(all_rays[i]);
  g.basis = greedy_basis(gens, n);
  g.lifts = dual_lifts(g.basis, n);
  const std::size_t d = g.basis.size();
  if (d == 0) return g;
  std::vector<Vector> coords;
  for (const auto& r : gens) {
    Vector c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = dot(g.lifts[j], r);
    coords.push_back(std::move(c));
  }
  std::set<RaySet> seen;
  for_each_subset(ids.size(), d - 1, [&](const std::vector<std::size_t>& subset) {
    std::vector<Vector> rows;
    for (auto s : subset) rows.push_back(coords[s]);
    Matrix m = Matrix::from_rows(rows, d);
    if (rank(m) != d - 1) return;
    Kernel k = kernel(m, d);
    Vector f = k.basis.column(0);
    int sign = 0;
    RaySet zero;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      int s = sgn(dot(f, coords[i]));
      if (s == 0) {
        zero.push_back(ids[i]);
      } else if (sign == 0) {
        sign = s;
      } else if (s != sign) {
        return;
      }
    }
    if (sign == 0 || !seen.insert(zero).second) return;
    if (sign < 0) {
      for (auto& x : f) x = -x;
    }
    Vector ambient(n);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < n; ++i) ambient[i] += f[j] * g.lifts[j][i];
    }
    g.facet_normals.push_back(std::move(ambient));
    g.facets.push_back(std::move(zero));
  });
  if (g.facets.empty() || rank(Matrix::from_rows(g.facet_normals, n)) < d) {
    throw Error(ErrorKind::NotPointed, "cone " + describe(ids) + " contains a line");
  }
  return g;
}

inline void collect_faces(const std::vector<Vector>& rays, const RaySet& ids, std::size_t n,
                          std::set<RaySet>& out) {
  if (!out.insert(ids).second) return;
  if (ids.empty()) return;
  ConeGeometry g = cone_geometry(rays, ids, n);
  for (const auto& f : g.facets) collect_faces(rays, f, n, out);
}

}  // namespace detail

class Fan {
 public:
  /// Builds and validates a fan from its maximal cones.  Rays are normalized
  /// to primitive integer vectors; the full face lattice is enumerated.
  static Fan build(int ambient_dim, const std::vector<Vector>& rays,
                   const std::vector<RaySet>& max_cones) {
    if (ambient_dim < 0) throw Error(ErrorKind::Parse, "negative ambient dimension");
    const auto n = static_cast<std::size_t>(ambient_dim);
    Fan fan;
    fan.n_ = ambient_dim;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (rays[i].size() != n) {
        throw Error(ErrorKind::BadRay, "ray " + std::to_string(i) + " has wrong length");
      }
      if (is_zero(rays[i])) throw Error(ErrorKind::BadRay, "ray " + std::to_string(i) + " is zero");
      fan.rays_.push_back(primitive(rays[i]));
    }
    for (std::size_t i = 0; i < fan.rays_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (fan.rays_[i] == fan.rays_[j]) {
          throw Error(ErrorKind::BadRay,
                      "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
        }
      }
    }

    std::vector<std::set<RaySet>> faces_of_max;
    std::set<RaySet> all;
    all.insert(RaySet{});
    for (RaySet mc : max_cones) {
      std::sort(mc.begin(), mc.end());
      mc.erase(std::unique(mc.begin(), mc.end()), mc.end());
      for (auto r : mc) {
        if (r >= fan.rays_.size()) {
          throw Error(ErrorKind::BadRay, "cone refers to missing ray " + std::to_string(r));
        }
      }
      std::set<RaySet> faces;
      detail::collect_faces(fan.rays_, mc, n, faces);
      for (auto r : mc) {
        if (!faces.count(RaySet{r})) {
          throw Error(ErrorKind::NotAFan, "ray " + std::to_string(r) + " is not an extreme ray of cone " +
                                              detail::describe(mc));
        }
      }
      all.insert(faces.begin(), faces.end());
      faces_of_max.push_back(std::move(faces));
    }

    // Ids ordered by (dimension, ray list); the origin gets id 0.
    std::vector<std::pair<int, RaySet>> order;
    for (const auto& s : all) {
      std::vector<Vector> gens;
      for (auto r : s) gens.push_back(fan.rays_[r]);
      order.emplace_back(static_cast<int>(gens.empty() ? 0 : rank(Matrix::from_columns(gens, n))), s);
    }
    std::sort(order.begin(), order.end());
    for (auto& [d, s] : order) {
      Cone c;
      c.id = fan.cones_.size();
      c.rays = s;
      c.dim = d;
      if (!s.empty()) {
        detail::ConeGeometry g = detail::cone_geometry(fan.rays_, s, n);
        c.span_basis = g.basis;
        c.lifts = g.lifts;
        c.facet_normals = g.facet_normals;
      }
      c.orientation = c.span_basis;
      c.equations = detail::orthogonal_complement(c.span_basis, n);
      fan.index_[s] = c.id;
      fan.cones_.push_back(std::move(c));
    }
    fan.validate_intersections(max_cones, faces_of_max);
    fan.build_order();
    return fan;
  }

  int ambient_dim() const noexcept { return n_; }
  const std::vector<Vector>& rays() const noexcept { return rays_; }
  std::size_t size() const noexcept { return cones_.size(); }
  ConeId origin() const noexcept { return 0; }

  const Cone& cone(ConeId id) const {
    check(id);
    return cones_[id];
  }
  const std::vector<Cone>& cones() const noexcept { return cones_; }
  int dim(ConeId id) const { return cone(id).dim; }

  std::optional<ConeId> find(RaySet rays) const {
    std::sort(rays.begin(), rays.end());
    auto it = index_.find(rays);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Cone id of the 1-dimensional cone over ray index r.
  ConeId ray_cone(std::size_t r) const {
    auto id = find({r});
    if (!id) throw Error(ErrorKind::UnknownCone, "no cone for ray " + std::to_string(r));
    return *id;
  }

  const std::vector<Cover>& covers() const noexcept { return covers_; }
  const std::vector<ConeId>& facets(ConeId id) const {
    check(id);
    return facets_[id];
  }
  const std::vector<ConeId>& cofacets(ConeId id) const {
    check(id);
    return cofacets_[id];
  }
  const std::vector<ConeId>& maximal_cones() const noexcept { return maximal_; }

  std::optional<std::size_t> cover_index(ConeId face, ConeId cone) const {
    auto it = cover_index_.find({face, cone});
    if (it == cover_index_.end()) return std::nullopt;
    return it->second;
  }

  /// tau <= sigma in the face order.
  bool is_face(ConeId tau, ConeId sigma) const {
    check(tau);
    check(sigma);
    const auto& a = cones_[tau].rays;
    const auto& b = cones_[sigma].rays;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  /// All faces of sigma (including sigma), ordered by id.
  std::vector<ConeId> faces_of(ConeId sigma) const {
    std::vector<ConeId> out;
    for (ConeId t = 0; t <= sigma; ++t) {
      if (is_face(t, sigma)) out.push_back(t);
    }
    return out;
  }

  std::vector<ConeId> cones_of_dim(int d) const {
    std::vector<ConeId> out;
    for (const auto& c : cones_) {
      if (c.dim == d) out.push_back(c.id);
    }
    return out;
  }

  int max_dim() const {
    int m = 0;
    for (const auto& c : cones_) m = std::max(m, c.dim);
    return m;
  }

  /// Sum of the primitive generators; lies in the relative interior.
  Vector interior_point(ConeId id) const {
    Vector p(static_cast<std::size_t>(n_));
    for (auto r : cone(id).rays) {
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += rays_[r][i];
    }
    return p;
  }

  bool contains(ConeId id, const Vector& x) const {
    const Cone& c = cone(id);
    for (const auto& e : c.equations) {
      if (sgn(dot(e, x)) != 0) return false;
    }
    for (const auto& f : c.facet_normals) {
      if (sgn(dot(f, x)) < 0) return false;
    }
    return true;
  }

  bool in_relative_interior(ConeId id, const Vector& x) const {
    if (!contains(id, x)) return false;
    for (const auto& f : cone(id).facet_normals) {
      if (sgn(dot(f, x)) == 0) return false;
    }
    return true;
  }

  /// Coordinates of x (assumed in Span) with respect to span_basis.
  Vector coordinates(ConeId id, const Vector& x) const {
    const Cone& c = cone(id);
    Vector out(c.lifts.size());
    for (std::size_t j = 0; j < c.lifts.size(); ++j) out[j] = dot(c.lifts[j], x);
    return out;
  }

  /// Incidence sign of a covering pair (tau, sigma).
  int incidence_sign(ConeId tau, ConeId sigma) const {
    auto idx = cover_index(tau, sigma);
    if (!idx) {
      throw Error(ErrorKind::NotCoveringPair,
                  "(" + std::to_string(tau) + "," + std::to_string(sigma) + ") is not a covering pair");
    }
    return cover_signs_[*idx];
  }

  int cover_sign(std::size_t cover_idx) const { return cover_signs_.at(cover_idx); }

  /// Copy of this fan with the stored orientation of one cone reversed.
  Fan with_flipped_orientation(ConeId id) const {
    check(id);
    Fan copy = *this;
    if (copy.cones_[id].orientation.empty()) return copy;
    for (auto& x : copy.cones_[id].orientation[0]) x = -x;
    copy.compute_signs();
    return copy;
  }

  bool is_simplicial() const {
    return std::all_of(cones_.begin(), cones_.end(),
                       [](const Cone& c) { return static_cast<int>(c.rays.size()) == c.dim; });
  }

  /// Complete iff all maximal cones are full-dimensional, every wall lies on
  /// exactly two of them and the wall graph is connected.
  bool is_complete() const {
    for (ConeId m : maximal_) {
      if (cones_[m].dim != n_) return false;
    }
    if (n_ == 0) return true;
    for (ConeId w : cones_of_dim(n_ - 1)) {
      if (cofacets_[w].size() != 2) return false;
    }
    std::vector<bool> seen(cones_.size(), false);
    std::queue<ConeId> todo;
    todo.push(maximal_.front());
    seen[maximal_.front()] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
      ConeId c = todo.front();
      todo.pop();
      for (ConeId w : facets_[c]) {
        for (ConeId other : cofacets_[w]) {
          if (!seen[other]) {
            seen[other] = true;
            ++reached;
            todo.push(other);
          }
        }
      }
    }
    return reached == maximal_.size();
  }

 private:
  void check(ConeId id) const {
    if (id >= cones_.size()) throw Error(ErrorKind::UnknownCone, "no cone with id " + std::to_string(id));
  }

  void build_order() {
    const std::size_t m = cones_.size();
    facets_.assign(m, {});
    cofacets_.assign(m, {});
    covers_.clear();
    cover_index_.clear();
    for (const auto& s : cones_) {
      for (const auto& t : cones_) {
        if (t.dim + 1 == s.dim && is_face(t.id, s.id)) {
          cover_index_[{t.id, s.id}] = covers_.size();
          covers_.push_back({t.id, s.id});
          facets_[s.id].push_back(t.id);
          cofacets_[t.id].push_back(s.id);
        }
      }
    }
    maximal_.clear();
    for (const auto& c : cones_) {
      if (cofacets_[c.id].empty()) maximal_.push_back(c.id);
    }
    compute_signs();
  }

  void compute_signs() {
    const auto n = static_cast<std::size_t>(n_);
    cover_signs_.clear();
    for (const auto& cv : covers_) {
      const Cone& tau = cones_[cv.face];
      const Cone& sigma = cones_[cv.cone];
      Vector w(n);
      for (auto r : sigma.rays) {
        if (!std::binary_search(tau.rays.begin(), tau.rays.end(), r)) {
          for (std::size_t i = 0; i < n; ++i) w[i] += rays_[r][i];
        }
      }
      std::vector<Vector> cols = tau.orientation;
      cols.push_back(w);
      Matrix basis = Matrix::from_columns(sigma.orientation, n);
      auto coeffs = solve(basis, Matrix::from_columns(cols, n));
      cover_signs_.push_back(sgn(determinant(*coeffs)));
    }
  }

  // Extreme rays of the intersection of two maximal cones must span a common
  // face of both.
  void validate_intersections(const std::vector<RaySet>& max_cones,
                              const std::vector<std::set<RaySet>>& faces_of_max) const {
    const auto n = static_cast<std::size_t>(n_);
    for (std::size_t a = 0; a < max_cones.size(); ++a) {
      for (std::size_t b = a + 1; b < max_cones.size(); ++b) {
        const Cone& ca = cones_[index_.at(sorted(max_cones[a]))];
        const Cone& cb = cones_[index_.at(sorted(max_cones[b]))];
        RaySet common;
        std::set_intersection(ca.rays.begin(), ca.rays.end(), cb.rays.begin(), cb.rays.end(),
                              std::back_inserter(common));
        auto fail = [&] {
          throw Error(ErrorKind::NotAFan, "cones " + detail::describe(ca.rays) + " and " +
                                              detail::describe(cb.rays) + " do not meet in a common face");
        };
        if (!faces_of_max[a].count(common) || !faces_of_max[b].count(common)) fail();
        std::vector<Vector> eqs = ca.equations;
        eqs.insert(eqs.end(), cb.equations.begin(), cb.equations.end());
        std::vector<Vector> ineqs = ca.facet_normals;
        ineqs.insert(ineqs.end(), cb.facet_normals.begin(), cb.facet_normals.end());
        for (const auto& ray : extreme_rays(eqs, ineqs, n)) {
          bool found = false;
          for (auto r : common) found = found || rays_[r] == ray;
          if (!found) fail();
        }
      }
    }
  }

  static RaySet sorted(RaySet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  // Extreme rays of the pointed cone {x : eqs.x = 0, ineqs.x >= 0}.
  static std::vector<Vector> extreme_rays(const std::vector<Vector>& eqs, const std::vector<Vector>& ineqs,
                                          std::size_t n) {
    Kernel space = eqs.empty() ? kernel(Matrix(0, n), n) : kernel(Matrix::from_rows(eqs, n), n);
    const std::size_t w = space.dim();
    if (w == 0) return {};
    std::vector<Vector> g;
    for (const auto& f : ineqs) {
      Vector local(w);
      for (std::size_t j = 0; j < w; ++j) local[j] = dot(f, space.basis.column(j));
      g.push_back(std::move(local));
    }
    std::set<Vector> found;
    detail::for_each_subset(g.size(), w - 1, [&](const std::vector<std::size_t>& subset) {
      std::vector<Vector> rows;
      for (auto s : subset) rows.push_back(g[s]);
      Kernel k = rows.empty() ? kernel(Matrix(0, w), w) : kernel(Matrix::from_rows(rows, w), w);
      if (k.dim() != 1) return;
      Vector y = k.basis.column(0);
      int sign = 0;
      for (const auto& row : g) {
        int s = sgn(dot(row, y));
        if (s == 0) continue;
        if (sign == 0) {
          sign = s;
        } else if (s != sign) {
          return;
        }
      }
      if (sign < 0) {
        for (auto& x : y) x = -x;
      }
      if (sign == 0) {
        // Both directions satisfy every inequality: the intersection has a line.
        return;
      }
      found.insert(primitive(space.basis.apply(y)));
    });
    return {found.begin(), found.end()};
  }

  int n_ = 0;
  std::vector<Vector> rays_;
  std::vector<Cone> cones_;
  std::map<RaySet, ConeId> index_;
  std::vector<Cover> covers_;
  std::map<std::pair<ConeId, ConeId>, std::size_t> cover_index_;
  std::vector<int> cover_signs_;
  std::vector<std::vector<ConeId>> facets_;
  std::vector<std::vector<ConeId>> cofacets_;
  std::vector<ConeId> maximal_;
};

using FanPtr = std::shared_ptr<const Fan>;

inline FanPtr make_fan(int ambient_dim, const std::vector<Vector>& rays, const std::vector<RaySet>& max_cones) {
  return std::make_shared<const Fan>(Fan::build(ambient_dim, rays, max_cones));
}

/// Convenience for integer coordinates.
inline FanPtr make_fan(int ambient_dim, const std::vector<std::vector<long>>& rays,
                       const std::vector<RaySet>& max_cones) {
  std::vector<Vector> rv;
  for (const auto& r : rays) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    rv.push_back(std::move(v));
  }
  return make_fan(ambient_dim, rv, max_cones);
}

// ---------------------------------------------------------------------------
// Subposets

enum class SubposetKind { Open, Closed, Arbitrary };

class Subposet {
 public:
  Subposet(std::size_t fan_size, std::vector<ConeId> cones, SubposetKind kind)
      : member_(fan_size, false), kind_(kind) {
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    for (auto c : cones) {
      if (c >= fan_size) throw Error(ErrorKind::UnknownCone, "no cone with id " + std::to_string(c));
      member_[c] = true;
    }
    cones_ = std::move(cones);
  }

  const std::vector<ConeId>& cones() const noexcept { return cones_; }
  bool contains(ConeId c) const { return c < member_.size() && member_[c]; }
  bool empty() const noexcept { return cones_.empty(); }
  std::size_t size() const noexcept { return cones_.size(); }
  SubposetKind kind() const noexcept { return kind_; }

 private:
  std::vector<bool> member_;
  std::vector<ConeId> cones_;
  SubposetKind kind_;
};

inline Subposet whole(const Fan& f) {
  std::vector<ConeId> all(f.size());
  std::iota(all.begin(), all.end(), ConeId{0});
  return {f.size(), all, SubposetKind::Open};
}

/// The subfan generated by the proper faces of sigma; empty for the origin.
inline Subposet boundary(const Fan& f, ConeId sigma) {
  std::vector<ConeId> out;
  if (f.dim(sigma) > 0) {
    for (ConeId t : f.faces_of(sigma)) {
      if (t != sigma) out.push_back(t);
    }
  }
  return {f.size(), out, SubposetKind::Open};
}

/// All cones containing tau.
inline Subposet star(const Fan& f, ConeId tau) {
  std::vector<ConeId> out;
  for (const auto& c : f.cones()) {
    if (f.is_face(tau, c.id)) out.push_back(c.id);
  }
  return {f.size(), out, SubposetKind::Closed};
}

/// The subfan [S] generated by a set of cones.
inline Subposet generated(const Fan& f, const std::vector<ConeId>& cones) {
  std::vector<ConeId> out;
  for (ConeId s : cones) {
    auto faces = f.faces_of(s);
    out.insert(out.end(), faces.begin(), faces.end());
  }
  return {f.size(), out, SubposetKind::Open};
}

inline Subposet up_to_dim(const Fan& f, int k) {
  std::vector<ConeId> out;
  for (const auto& c : f.cones()) {
    if (c.dim <= k) out.push_back(c.id);
  }
  return {f.size(), out, SubposetKind::Open};
}

// ---------------------------------------------------------------------------
// Conewise linear functions

/// Continuous conewise linear function, one ambient linear form per maximal
/// cone (indexed like Fan::maximal_cones()).
class PiecewiseLinearFunction {
 public:
  PiecewiseLinearFunction(FanPtr fan, std::vector<Vector> forms) : fan_(std::move(fan)), forms_(std::move(forms)) {
    if (forms_.size() != fan_->maximal_cones().size()) {
      throw Error(ErrorKind::Parse, "one linear form per maximal cone is required");
    }
    const auto n = static_cast<std::size_t>(fan_->ambient_dim());
    for (const auto& f : forms_) {
      if (f.size() != n) throw Error(ErrorKind::Parse, "linear form has wrong length");
    }
    const auto& maxc = fan_->maximal_cones();
    for (std::size_t a = 0; a < maxc.size(); ++a) {
      for (std::size_t b = a + 1; b < maxc.size(); ++b) {
        const auto& ra = fan_->cone(maxc[a]).rays;
        const auto& rb = fan_->cone(maxc[b]).rays;
        RaySet common;
        std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(common));
        for (auto r : common) {
          if (dot(forms_[a], fan_->rays()[r]) != dot(forms_[b], fan_->rays()[r])) {
            throw Error(ErrorKind::CheckFailed, "conewise linear function is discontinuous along ray " +
                                                    std::to_string(r));
          }
        }
      }
    }
  }

  /// The function taking the given values on the primitive ray generators.
  static PiecewiseLinearFunction from_ray_values(FanPtr fan, const std::vector<Rational>& values) {
    if (values.size() != fan->rays().size()) throw Error(ErrorKind::Parse, "one value per ray is required");
    const auto n = static_cast<std::size_t>(fan->ambient_dim());
    std::vector<Vector> forms;
    for (ConeId m : fan->maximal_cones()) {
      const Cone& c = fan->cone(m);
      std::vector<Vector> rows;
      Matrix rhs(c.rays.size(), 1);
      for (std::size_t i = 0; i < c.rays.size(); ++i) {
        rows.push_back(fan->rays()[c.rays[i]]);
        rhs(i, 0) = values[c.rays[i]];
      }
      auto sol = solve(Matrix::from_rows(rows, n), rhs);
      if (!sol) {
        throw Error(ErrorKind::CheckFailed,
                    "ray values are not linear on cone " + std::to_string(m));
      }
      forms.push_back(sol->column(0));
    }
    return {std::move(fan), std::move(forms)};
  }

  const FanPtr& fan() const noexcept { return fan_; }
  const std::vector<Vector>& forms() const noexcept { return forms_; }

  /// A linear form agreeing with the function on the given cone.
  const Vector& form_on(ConeId c) const {
    const auto& maxc = fan_->maximal_cones();
    for (std::size_t i = 0; i < maxc.size(); ++i) {
      if (fan_->is_face(c, maxc[i])) return forms_[i];
    }
    throw Error(ErrorKind::UnknownCone, "cone " + std::to_string(c) + " lies in no maximal cone");
  }

  PiecewiseLinearFunction plus_linear(const Vector& g) const {
    std::vector<Vector> out = forms_;
    for (auto& f : out) {
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += g[i];
    }
    return {fan_, std::move(out)};
  }

  PiecewiseLinearFunction negated() const {
    std::vector<Vector> out = forms_;
    for (auto& f : out) {
      for (auto& x : f) x = -x;
    }
    return {fan_, std::move(out)};
  }

 private:
  FanPtr fan_;
  std::vector<Vector> forms_;
};

// ---------------------------------------------------------------------------
// Subdivisions

struct SubdivisionMap {
  FanPtr fine;
  FanPtr coarse;
  std::vector<ConeId> image;  // fine cone -> smallest coarse cone containing it

  /// Fine cones mapping into the subfan [sigma].
  std::vector<ConeId> preimage_of_subfan(ConeId sigma) const {
    std::vector<ConeId> out;
    for (ConeId c = 0; c < image.size(); ++c) {
      if (coarse->is_face(image[c], sigma)) out.push_back(c);
    }
    return out;
  }

  /// Fine cones subdividing the relative interior of sigma.
  std::vector<ConeId> preimage(ConeId sigma) const {
    std::vector<ConeId> out;
    for (ConeId c = 0; c < image.size(); ++c) {
      if (image[c] == sigma) out.push_back(c);
    }
    return out;
  }
};

inline SubdivisionMap subdivision_map(FanPtr fine, FanPtr coarse) {
  if (fine->ambient_dim() != coarse->ambient_dim()) {
    throw Error(ErrorKind::NotASubdivision, "fans live in different dimensions");
  }
  SubdivisionMap m{fine, coarse, {}};
  for (const auto& c : fine->cones()) {
    std::optional<ConeId> best;
    for (const auto& s : coarse->cones()) {
      if (best && coarse->dim(*best) <= s.dim) continue;
      bool inside = true;
      for (auto r : c.rays) inside = inside && coarse->contains(s.id, fine->rays()[r]);
      if (inside) best = s.id;
    }
    if (!best) {
      throw Error(ErrorKind::NotASubdivision, "fine cone " + std::to_string(c.id) + " lies in no coarse cone");
    }
    if (!coarse->in_relative_interior(*best, fine->interior_point(c.id))) {
      throw Error(ErrorKind::NotASubdivision, "fine cone " + std::to_string(c.id) + " straddles coarse cones");
    }
    m.image.push_back(*best);
  }
  for (const auto& cv : fine->covers()) {
    if (!coarse->is_face(m.image[cv.face], m.image[cv.cone])) {
      throw Error(ErrorKind::NotASubdivision, "assignment is not order preserving");
    }
  }
  // Each coarse cone must be tiled by the top-dimensional fine cones inside it.
  for (const auto& s : coarse->cones()) {
    if (s.dim == 0) continue;
    std::vector<ConeId> tiles;
    for (ConeId c : m.preimage(s.id)) {
      if (fine->dim(c) == s.dim) tiles.push_back(c);
    }
    auto fail = [&] {
      throw Error(ErrorKind::NotASubdivision, "coarse cone " + std::to_string(s.id) + " is not covered");
    };
    if (tiles.empty()) fail();
    std::set<ConeId> tile_set(tiles.begin(), tiles.end());
    for (ConeId t : tiles) {
      for (ConeId w : fine->facets(t)) {
        std::size_t around = 0;
        for (ConeId o : fine->cofacets(w)) around += tile_set.count(o);
        const std::size_t expected = m.image[w] == s.id ? 2 : 1;
        if (around != expected) fail();
      }
    }
    std::set<ConeId> seen{tiles.front()};
    std::vector<ConeId> todo{tiles.front()};
    while (!todo.empty()) {
      ConeId t = todo.back();
      todo.pop_back();
      for (ConeId w : fine->facets(t)) {
        if (m.image[w] != s.id) continue;
        for (ConeId o : fine->cofacets(w)) {
          if (tile_set.count(o) && seen.insert(o).second) todo.push_back(o);
        }
      }
    }
    if (seen.size() != tiles.size()) fail();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Boundary projection

struct BoundaryProjection {
  FanPtr fan;                        // complete fan in dimension d(sigma) - 1
  PiecewiseLinearFunction function;  // boundary of sigma is the graph of this function
  Vector interior_direction;         // ambient vector used as the projection kernel
  std::vector<ConeId> source_facet;  // maximal cone of `fan` -> facet of sigma
};

/// Projects the boundary of sigma along the sum of its rays onto a complete
/// fan of one dimension less.
inline BoundaryProjection boundary_projection(const FanPtr& fan, ConeId sigma) {
  const Cone& s = fan->cone(sigma);
  const int d = s.dim;
  if (d < 2) throw Error(ErrorKind::DimensionTooSmall, "boundary projection needs dimension >= 2");
  const auto du = static_cast<std::size_t>(d);
  const Vector w_amb = fan->interior_point(sigma);
  const Vector w = fan->coordinates(sigma, w_amb);
  std::size_t pivot = 0;
  while (sgn(w[pivot]) == 0) ++pivot;
  auto project = [&](const Vector& x) {
    Vector y;
    for (std::size_t j = 0; j < du; ++j) {
      if (j != pivot) y.push_back(x[j] - (w[j] / w[pivot]) * x[pivot]);
    }
    return y;
  };
  std::vector<Vector> new_rays;
  std::vector<Rational> heights;
  std::map<std::size_t, std::size_t> ray_map;
  for (auto r : s.rays) {
    Vector x = fan->coordinates(sigma, fan->rays()[r]);
    Vector y = project(x);
    Vector py = primitive(y);
    // Scale factor from y to its primitive representative.
    std::size_t k = 0;
    while (sgn(y[k]) == 0) ++k;
    Rational scale = py[k] / y[k];
    ray_map[r] = new_rays.size();
    new_rays.push_back(py);
    heights.push_back(scale * x[pivot] / w[pivot]);
  }
  std::vector<ConeId> facets;
  std::vector<RaySet> max_cones;
  for (ConeId f : fan->facets(sigma)) {
    RaySet rs;
    for (auto r : fan->cone(f).rays) rs.push_back(ray_map.at(r));
    facets.push_back(f);
    max_cones.push_back(rs);
  }
  FanPtr projected = make_fan(d - 1, new_rays, max_cones);
  std::vector<ConeId> source(projected->maximal_cones().size());
  for (std::size_t i = 0; i < max_cones.size(); ++i) {
    ConeId id = *projected->find(max_cones[i]);
    auto pos = std::find(projected->maximal_cones().begin(), projected->maximal_cones().end(), id);
    source[static_cast<std::size_t>(pos - projected->maximal_cones().begin())] = facets[i];
  }
  PiecewiseLinearFunction l = PiecewiseLinearFunction::from_ray_values(projected, heights);
  return {projected, std::move(l), w_amb, std::move(source)};
}

/// The fan [sigma] of the cone over a polytope placed at height 1.
inline FanPtr cone_over_polytope(int dim, const std::vector<Vector>& vertices) {
  const auto n = static_cast<std::size_t>(dim);
  std::vector<Vector> rays;
  for (const auto& v : vertices) {
    if (v.size() != n) throw Error(ErrorKind::Parse, "vertex has wrong length");
    Vector r = v;
    r.emplace_back(1);
    rays.push_back(std::move(r));
  }
  if (rays.empty() || rank(Matrix::from_columns(rays, n + 1)) != n + 1) {
    throw Error(ErrorKind::DegeneratePolytope, "fewer than dim+1 affinely independent vertices");
  }
  RaySet all(rays.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  try {
    return make_fan(dim + 1, rays, {all});
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotAFan) {
      throw Error(ErrorKind::DegeneratePolytope, std::string("a listed point is not a vertex: ") + e.what());
    }
    throw;
  }
}

}  // namespace fanih
