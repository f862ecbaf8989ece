#pragma once

// Sheaves of graded modules on the fan poset.  A sheaf stores one stalk per
// cone and one restriction map per covering pair; all stalks share the same
// degree window.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanih/error.hpp"
#include "fanih/fan.hpp"
#include "fanih/graded.hpp"

namespace fanih {

class Sheaf {
 public:
  Sheaf(FanPtr fan, int lo, int hi) : fan_(std::move(fan)), lo_(lo), hi_(hi) {
    stalks_.assign(fan_->size(), GradedModule(fan_->ambient_dim(), lo, hi));
    restrictions_.assign(fan_->covers().size(), std::nullopt);
  }

  const FanPtr& fan() const noexcept { return fan_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  int ambient() const noexcept { return fan_->ambient_dim(); }

  const GradedModule& stalk(ConeId c) const { return stalks_.at(c); }

  void set_stalk(ConeId c, GradedModule m) {
    if (m.lo() != lo_ || m.hi() != hi_) throw std::invalid_argument("stalk window differs from sheaf window");
    stalks_.at(c) = std::move(m);
  }

  /// Restriction F_sigma -> F_tau at degree d for a covering pair.
  Matrix restriction(ConeId tau, ConeId sigma, int d) const {
    auto idx = fan_->cover_index(tau, sigma);
    if (!idx) {
      throw Error(ErrorKind::NotCoveringPair,
                  "(" + std::to_string(tau) + "," + std::to_string(sigma) + ") is not a covering pair");
    }
    return restriction(*idx, d);
  }

  Matrix restriction(std::size_t cover, int d) const {
    const auto& r = restrictions_.at(cover);
    const Cover& cv = fan_->covers()[cover];
    if (!r) return Matrix(stalk(cv.face).dim(d), stalk(cv.cone).dim(d));
    return r->at(d);
  }

  void set_restriction(std::size_t cover, GradedMap m) { restrictions_.at(cover) = std::move(m); }
  void clear_restriction(std::size_t cover) { restrictions_.at(cover).reset(); }
  bool has_restriction(std::size_t cover) const { return restrictions_.at(cover).has_value(); }

  std::vector<ConeId> support() const {
    std::vector<ConeId> out;
    for (ConeId c = 0; c < stalks_.size(); ++c) {
      if (!stalks_[c].is_zero()) out.push_back(c);
    }
    return out;
  }

  /// F(t): every stalk shifted, restrictions unchanged.
  Sheaf shifted(int t) const {
    Sheaf out(fan_, lo_ - t, hi_ - t);
    for (ConeId c = 0; c < stalks_.size(); ++c) out.stalks_[c] = stalks_[c].shifted(t);
    for (std::size_t i = 0; i < restrictions_.size(); ++i) {
      if (restrictions_[i]) out.restrictions_[i] = restrictions_[i]->shifted(t);
    }
    return out;
  }

 private:
  FanPtr fan_;
  int lo_;
  int hi_;
  std::vector<GradedModule> stalks_;
  std::vector<std::optional<GradedMap>> restrictions_;
};

inline int default_cap(const Fan& f) { return 2 * f.ambient_dim() + 2; }

inline void check_cap(int cap) {
  if (cap < 2 || cap % 2 != 0) throw Error(ErrorKind::CapTooSmall, "degree cap must be even and at least 2");
}

/// Free module of polynomial functions on Span(sigma) with the given
/// generator degrees.
inline FreeModule free_stalk(const Fan& f, ConeId sigma, std::vector<int> gens, int lo, int hi) {
  return FreeModule::on_span(f.cone(sigma).span_basis, f.ambient_dim(), std::move(gens), lo, hi);
}

/// Sheaf of conewise polynomial functions.
inline Sheaf structure_sheaf(const FanPtr& fan, int cap) {
  check_cap(cap);
  Sheaf s(fan, 0, cap);
  std::vector<FreeModule> free;
  for (ConeId c = 0; c < fan->size(); ++c) {
    free.push_back(free_stalk(*fan, c, {0}, 0, cap));
    s.set_stalk(c, free.back().module());
  }
  for (std::size_t i = 0; i < fan->covers().size(); ++i) {
    const Cover& cv = fan->covers()[i];
    Vector one(s.stalk(cv.face).dim(0));
    one[0] = 1;
    s.set_restriction(i, free_module_map(free[cv.cone], s.stalk(cv.face), {one}, fan->cone(cv.cone).lifts));
  }
  return s;
}

/// Restrictions F_sigma -> F_tau at degree d for every face tau of sigma,
/// composed along covering chains.
inline std::map<ConeId, Matrix> restrictions_from(const Sheaf& f, ConeId sigma, int d) {
  const Fan& fan = *f.fan();
  std::map<ConeId, Matrix> out;
  out[sigma] = Matrix::identity(f.stalk(sigma).dim(d));
  auto faces = fan.faces_of(sigma);
  for (auto it = faces.rbegin(); it != faces.rend(); ++it) {
    const ConeId tau = *it;
    if (tau == sigma) continue;
    for (ConeId rho : fan.cofacets(tau)) {
      auto found = out.find(rho);
      if (found == out.end()) continue;
      out[tau] = f.restriction(tau, rho, d) * found->second;
      break;
    }
  }
  return out;
}

/// Composite restriction F_sigma -> F_tau for tau <= sigma.
inline Matrix composite_restriction(const Sheaf& f, ConeId tau, ConeId sigma, int d) {
  if (!f.fan()->is_face(tau, sigma)) {
    throw Error(ErrorKind::UnknownCone, std::to_string(tau) + " is not a face of " + std::to_string(sigma));
  }
  return restrictions_from(f, sigma, d).at(tau);
}

// ---------------------------------------------------------------------------
// Sections

/// Compatible families over a subposet, as a submodule of the direct sum of
/// the stalks (summands in the subposet's cone order).
struct Sections {
  std::vector<ConeId> cones;
  DirectSum sum;
  Submodule sub;

  const GradedModule& module() const noexcept { return sub.module; }

  std::size_t position(ConeId c) const {
    auto it = std::lower_bound(cones.begin(), cones.end(), c);
    if (it == cones.end() || *it != c) throw Error(ErrorKind::UnknownCone, "cone outside the subposet");
    return static_cast<std::size_t>(it - cones.begin());
  }

  /// Rows of the direct sum belonging to cone c at degree d.
  std::pair<std::size_t, std::size_t> block(ConeId c, int d, std::size_t stalk_dim) const {
    const auto& off = sum.offsets.at(static_cast<std::size_t>(d - sum.module.lo()));
    return {off[position(c)], stalk_dim};
  }

  /// Component at cone c of the basis sections in degree d.
  Matrix projection(const Sheaf& f, ConeId c, int d) const {
    auto [r0, nr] = block(c, d, f.stalk(c).dim(d));
    const Matrix& inc = sub.inclusion(d);
    return inc.block(r0, 0, nr, inc.cols());
  }

  /// Coordinates of direct-sum vectors (columns) lying in the sections.
  Matrix coordinates(int d, const Matrix& big) const { return sub.kernel_at(d).coordinates(big); }
};

inline Sections sections(const Sheaf& f, const Subposet& s) {
  const Fan& fan = *f.fan();
  Sections out;
  out.cones = s.cones();
  std::vector<const GradedModule*> parts;
  for (ConeId c : out.cones) parts.push_back(&f.stalk(c));
  out.sum = direct_sum(parts, f.ambient(), f.lo(), f.hi());
  std::vector<std::size_t> covers;
  for (std::size_t i = 0; i < fan.covers().size(); ++i) {
    const Cover& cv = fan.covers()[i];
    if (s.contains(cv.face) && s.contains(cv.cone)) covers.push_back(i);
  }
  auto difference = [&](int d) {
    std::size_t rows = 0;
    for (auto i : covers) rows += f.stalk(fan.covers()[i].face).dim(d);
    const auto& off = out.sum.offsets[static_cast<std::size_t>(d - f.lo())];
    Matrix m(rows, out.sum.module.dim(d));
    std::size_t r0 = 0;
    for (auto i : covers) {
      const Cover& cv = fan.covers()[i];
      const std::size_t k = f.stalk(cv.face).dim(d);
      if (k == 0) continue;
      if (f.stalk(cv.cone).dim(d)) m.set_block(r0, off[out.position(cv.cone)], f.restriction(i, d));
      const std::size_t c0 = off[out.position(cv.face)];
      for (std::size_t j = 0; j < k; ++j) m(r0 + j, c0 + j) = -1;
      r0 += k;
    }
    return m;
  };
  out.sub = kernel_submodule(out.sum.module, difference);
  return out;
}

/// The restriction F_sigma -> Gamma(S; F) for a subposet S of faces of sigma,
/// in section coordinates.
inline GradedMap restriction_to_sections(const Sheaf& f, ConeId sigma, const Sections& n) {
  GradedMap out(f.lo(), f.hi());
  for (int d = f.lo(); d <= f.hi(); ++d) {
    auto res = restrictions_from(f, sigma, d);
    const std::size_t cols = f.stalk(sigma).dim(d);
    Matrix big(n.sum.module.dim(d), cols);
    for (ConeId c : n.cones) {
      if (f.stalk(c).dim(d) == 0 || cols == 0) continue;
      auto [r0, nr] = n.block(c, d, f.stalk(c).dim(d));
      big.set_block(r0, 0, res.at(c));
    }
    out.set(d, n.coordinates(d, big));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundary maps, flabbiness, local freeness

struct BoundaryData {
  Sections boundary;  // Gamma(boundary(sigma); F)
  GradedMap map;      // F_sigma -> Gamma(boundary(sigma); F)
};

inline BoundaryData boundary_data(const Sheaf& f, ConeId sigma) {
  Sections n = sections(f, boundary(*f.fan(), sigma));
  GradedMap m = restriction_to_sections(f, sigma, n);
  return {std::move(n), std::move(m)};
}

/// Degreewise rank of the induced map on minimal generators
/// F_sigma / A^+ F_sigma -> N / A^+ N.
inline std::size_t bar_rank(const BoundaryData& b, int d) {
  const GradedModule& n = b.boundary.module();
  Matrix pos = n.positive_part(d);
  const std::size_t base = rank(pos);
  return rank(hstack({pos, b.map.at(d)}, n.dim(d))) - base;
}

inline std::size_t bar_dim(const GradedModule& m, int d) { return m.dim(d) - rank(m.positive_part(d)); }

struct Witness {
  ConeId cone = 0;
  int degree = 0;
  std::string reason;
};

struct CheckResult {
  bool ok = true;
  std::optional<Witness> witness;

  static CheckResult pass() { return {}; }
  static CheckResult fail(ConeId c, int d, std::string reason) { return {false, Witness{c, d, std::move(reason)}}; }
};

/// Flabby iff every restriction F_sigma -> Gamma(boundary(sigma); F) is onto
/// (degreewise up to the cap).
inline CheckResult is_flabby(const Sheaf& f) {
  for (ConeId c = 0; c < f.fan()->size(); ++c) {
    BoundaryData b = boundary_data(f, c);
    for (int d = f.lo(); d <= f.hi(); ++d) {
      const std::size_t target = b.boundary.module().dim(d);
      if (target && rank(b.map.at(d)) != target) {
        return CheckResult::fail(c, d, "restriction to the boundary is not surjective");
      }
    }
  }
  return CheckResult::pass();
}

struct LocalFreeness {
  bool free = true;
  std::vector<GradedDims> generators;  // per cone
  std::optional<Witness> witness;
};

inline LocalFreeness is_locally_free(const Sheaf& f) {
  LocalFreeness out;
  const Fan& fan = *f.fan();
  for (ConeId c = 0; c < fan.size(); ++c) {
    FreenessReport r = check_free(f.stalk(c), fan.cone(c).lifts);
    out.generators.push_back(r.generators);
    if (!r.free && out.free) {
      out.free = false;
      out.witness = Witness{c, r.failing_degree.value_or(f.lo()), r.reason};
    }
  }
  return out;
}

/// Kernel of F_sigma -> Gamma(boundary(sigma); F).
inline GradedModule costalk(const Sheaf& f, ConeId sigma) {
  BoundaryData b = boundary_data(f, sigma);
  return kernel_submodule(f.stalk(sigma), [&](int d) { return b.map.at(d); }).module;
}

/// Stalks outside `keep` replaced by zero; restrictions between kept cones
/// retained.
inline Sheaf zero_outside(const Sheaf& f, const Subposet& keep) {
  Sheaf out(f.fan(), f.lo(), f.hi());
  for (ConeId c : keep.cones()) out.set_stalk(c, f.stalk(c));
  const auto& covers = f.fan()->covers();
  for (std::size_t i = 0; i < covers.size(); ++i) {
    if (!keep.contains(covers[i].face) || !keep.contains(covers[i].cone)) continue;
    GradedMap m(f.lo(), f.hi());
    for (int d = f.lo(); d <= f.hi(); ++d) m.set(d, f.restriction(i, d));
    out.set_restriction(i, std::move(m));
  }
  return out;
}

/// Extension by zero of the restriction to Star(tau).
inline Sheaf star_restriction(const Sheaf& f, ConeId tau) { return zero_outside(f, star(*f.fan(), tau)); }

// ---------------------------------------------------------------------------
// Structural invariants

/// Both composites around every interval of length two agree.
inline CheckResult chain_independence(const Sheaf& f) {
  const Fan& fan = *f.fan();
  for (ConeId s = 0; s < fan.size(); ++s) {
    for (ConeId r1 : fan.facets(s)) {
      for (ConeId t : fan.facets(r1)) {
        for (ConeId r2 : fan.facets(s)) {
          if (r2 <= r1 || !fan.is_face(t, r2)) continue;
          for (int d = f.lo(); d <= f.hi(); ++d) {
            Matrix a = f.restriction(t, r1, d) * f.restriction(r1, s, d);
            Matrix b = f.restriction(t, r2, d) * f.restriction(r2, s, d);
            if (!(a == b)) return CheckResult::fail(s, d, "composites to cone " + std::to_string(t) + " differ");
          }
        }
      }
    }
  }
  return CheckResult::pass();
}

/// Every restriction intertwines the actions and every stalk is a module.
inline CheckResult module_structure(const Sheaf& f) {
  const Fan& fan = *f.fan();
  for (ConeId c = 0; c < fan.size(); ++c) {
    if (auto d = f.stalk(c).commutativity_failure()) return CheckResult::fail(c, *d, "actions do not commute");
  }
  for (std::size_t i = 0; i < fan.covers().size(); ++i) {
    const Cover& cv = fan.covers()[i];
    GradedMap m(f.lo(), f.hi());
    for (int d = f.lo(); d <= f.hi(); ++d) m.set(d, f.restriction(i, d));
    if (auto d = intertwining_failure(m, f.stalk(cv.cone), f.stalk(cv.face))) {
      return CheckResult::fail(cv.cone, *d, "restriction is not A-linear");
    }
  }
  return CheckResult::pass();
}

/// Gamma([sigma]; F) -> F_sigma is an isomorphism in every degree.
inline CheckResult sections_match_stalks(const Sheaf& f) {
  const Fan& fan = *f.fan();
  for (ConeId c = 0; c < fan.size(); ++c) {
    Sections s = sections(f, generated(fan, {c}));
    for (int d = f.lo(); d <= f.hi(); ++d) {
      const std::size_t k = f.stalk(c).dim(d);
      if (s.module().dim(d) != k) return CheckResult::fail(c, d, "section dimension differs from stalk");
      if (k && rank(s.projection(f, c, d)) != k) return CheckResult::fail(c, d, "projection is not invertible");
    }
  }
  return CheckResult::pass();
}

}  // namespace fanih
