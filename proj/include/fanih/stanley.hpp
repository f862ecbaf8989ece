#pragma once

// Stanley's generalized h- and g-polynomials of Eulerian face lattices,
// and their comparison with the intersection cohomology of the cone over a
// polytope.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fanih/error.hpp"
#include "fanih/fan.hpp"
#include "fanih/ihlib.hpp"
#include "fanih/polynomial.hpp"

namespace fanih {

class FaceLattice {
 public:
  /// Faces with dimensions (empty face has dimension -1) and strict order
  /// pairs (a, b) meaning a < b; the order is closed transitively.
  FaceLattice(std::vector<int> dims, const std::vector<std::pair<std::size_t, std::size_t>>& order)
      : dims_(std::move(dims)), less_(dims_.size(), std::vector<bool>(dims_.size(), false)) {
    const std::size_t m = dims_.size();
    for (const auto& [a, b] : order) {
      if (a >= m || b >= m || a == b) throw Error(ErrorKind::Parse, "bad order relation in face lattice");
      less_[a][b] = true;
    }
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        if (!less_[i][k]) continue;
        for (std::size_t j = 0; j < m; ++j) {
          if (less_[k][j]) less_[i][j] = true;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (less_[i][i]) throw Error(ErrorKind::Parse, "face lattice order has a cycle");
      for (std::size_t j = 0; j < m; ++j) {
        if (less_[i][j] && dims_[i] >= dims_[j]) {
          throw Error(ErrorKind::Parse, "face lattice order does not increase dimension");
        }
      }
    }
    std::vector<std::size_t> bottoms, tops;
    for (std::size_t i = 0; i < m; ++i) {
      bool has_below = false, has_above = false;
      for (std::size_t j = 0; j < m; ++j) {
        has_below = has_below || less_[j][i];
        has_above = has_above || less_[i][j];
      }
      if (!has_below) bottoms.push_back(i);
      if (!has_above) tops.push_back(i);
    }
    if (bottoms.size() != 1 || tops.size() != 1) {
      throw Error(ErrorKind::Parse, "face lattice needs a unique empty face and a unique top face");
    }
    bottom_ = bottoms.front();
    top_ = tops.front();
  }

  std::size_t size() const noexcept { return dims_.size(); }
  int dim(std::size_t i) const { return dims_.at(i); }
  bool less(std::size_t a, std::size_t b) const { return less_.at(a).at(b); }
  std::size_t bottom() const noexcept { return bottom_; }
  std::size_t top() const noexcept { return top_; }

  /// Every interval [x, y] with x < y has as many elements of even as of odd
  /// rank.  Returns the first failing pair.
  std::optional<std::pair<std::size_t, std::size_t>> eulerian_failure() const {
    for (std::size_t x = 0; x < size(); ++x) {
      for (std::size_t y = 0; y < size(); ++y) {
        if (!less(x, y)) continue;
        int sum = (dims_[x] % 2 == 0 ? 1 : -1) + (dims_[y] % 2 == 0 ? 1 : -1);
        for (std::size_t z = 0; z < size(); ++z) {
          if (less(x, z) && less(z, y)) sum += (dims_[z] % 2 == 0 ? 1 : -1);
        }
        if (sum != 0) return std::make_pair(x, y);
      }
    }
    return std::nullopt;
  }

 private:
  std::vector<int> dims_;
  std::vector<std::vector<bool>> less_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

/// Face lattice of a polytope, read off the cone over it (the origin of the
/// cone is the empty face).
inline FaceLattice face_lattice(const Fan& cone_fan) {
  std::vector<int> dims;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (const auto& c : cone_fan.cones()) dims.push_back(c.dim - 1);
  for (const auto& cv : cone_fan.covers()) order.emplace_back(cv.face, cv.cone);
  return FaceLattice(std::move(dims), order);
}

inline FaceLattice face_lattice(int dim, const std::vector<Vector>& vertices) {
  return face_lattice(*cone_over_polytope(dim, vertices));
}

struct GHPair {
  Polynomial h;
  Polynomial g;
};

/// g_j = h_j - h_{j-1} for 0 <= j <= floor(d / 2).
inline Polynomial g_from_h(const Polynomial& h, int d) {
  Polynomial g;
  for (int j = 0; 2 * j <= d; ++j) g.add(j, h[j] - h[j - 1]);
  return g;
}

/// Stanley's simultaneous recursion over all faces, in order of dimension.
inline std::vector<GHPair> gh_all(const FaceLattice& l) {
  std::vector<std::size_t> order(l.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return l.dim(a) < l.dim(b); });
  std::vector<GHPair> out(l.size());
  const Polynomial t_minus_1{{1, 1}, {0, -1}};
  for (std::size_t q : order) {
    if (q == l.bottom()) {
      out[q] = {Polynomial::constant(1), Polynomial::constant(1)};
      continue;
    }
    const int d = l.dim(q);
    Polynomial h;
    for (std::size_t p = 0; p < l.size(); ++p) {
      if (!l.less(p, q)) continue;
      h += t_minus_1.pow(static_cast<unsigned>(d - l.dim(p) - 1)) * out[p].g;
    }
    out[q] = {h, g_from_h(h, d)};
  }
  return out;
}

inline GHPair gh_vectors(const FaceLattice& l) {
  if (auto bad = l.eulerian_failure()) {
    throw Error(ErrorKind::Parse, "face lattice is not Eulerian between faces " + std::to_string(bad->first) +
                                      " and " + std::to_string(bad->second));
  }
  return gh_all(l)[l.top()];
}

struct StanleyComparison {
  GHPair gh;
  Polynomial ih_sigma;
  Polynomial ip_sigma;
  bool ih_matches = false;
  bool ip_matches = false;
  bool pass() const { return ih_matches && ip_matches; }
};

/// ih and ip of the cone over a polytope against h(q^2) and g(q^2).
inline StanleyComparison compare_ih_h(int dim, const std::vector<Vector>& vertices) {
  FanPtr fan = cone_over_polytope(dim, vertices);
  const ConeId sigma = fan->maximal_cones().front();
  StanleyComparison rep;
  rep.gh = gh_vectors(face_lattice(*fan));
  rep.ih_sigma = ih_local(fan, sigma);
  rep.ip_sigma = ip(fan, sigma);
  rep.ih_matches = rep.ih_sigma == rep.gh.h.stretched(2);
  rep.ip_matches = rep.ip_sigma == rep.gh.g.stretched(2);
  return rep;
}

}  // namespace fanih
