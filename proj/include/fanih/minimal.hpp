#pragma once

// Minimal sheaves L^tau built cone by cone over Star(tau): each new stalk is
// the free module on the minimal generators of the sections over the cone's
// boundary, restricting to chosen lifts of those generators.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanih/error.hpp"
#include "fanih/fan.hpp"
#include "fanih/graded.hpp"
#include "fanih/sheaf.hpp"

namespace fanih {

/// Which basis sections represent the generators of boundary sections.
enum class LiftPolicy { Forward, Reverse };

struct MinimalSheaf {
  Sheaf sheaf;
  ConeId base;
  std::vector<GradedDims> generators;  // per cone; empty off the support
};

/// Installs at rho the free A_rho-module on the chosen sections of
/// Gamma(boundary(rho); L), restricting each generator to its section.
/// `chosen` lists (degree, basis index) pairs of n's basis.
inline void install_lifted_stalk(Sheaf& l, ConeId rho, const Sections& n,
                                 const std::vector<std::pair<int, std::size_t>>& chosen) {
  const Fan& fan = *l.fan();
  std::vector<int> degrees;
  for (const auto& [d, idx] : chosen) degrees.push_back(d);
  FreeModule free = free_stalk(fan, rho, degrees, l.lo(), l.hi());
  l.set_stalk(rho, free.module());
  for (ConeId phi : fan.facets(rho)) {
    const std::size_t cover = *fan.cover_index(phi, rho);
    if (l.stalk(phi).is_zero()) {
      l.clear_restriction(cover);
      continue;
    }
    std::vector<Vector> images;
    for (const auto& [d, idx] : chosen) images.push_back(n.projection(l, phi, d).column(idx));
    l.set_restriction(cover, free_module_map(free, l.stalk(phi), images, fan.cone(rho).lifts));
  }
}

/// The minimal sheaf based at tau, restricted to the open subposet `within`
/// (the whole fan by default).
inline MinimalSheaf minimal_sheaf(const FanPtr& fan, ConeId tau, int cap, LiftPolicy policy = LiftPolicy::Forward,
                                  const std::optional<Subposet>& within = std::nullopt) {
  check_cap(cap);
  const Fan& f = *fan;
  Subposet st = star(f, tau);
  std::vector<ConeId> order;
  for (ConeId c : st.cones()) {
    if (!within || within->contains(c)) order.push_back(c);
  }
  for (ConeId c : order) {
    if (cap < 2 * (f.dim(c) - 1)) {
      throw Error(ErrorKind::CapTooSmall, "cap " + std::to_string(cap) + " below generator bound for cone " +
                                              std::to_string(c));
    }
  }
  MinimalSheaf out{Sheaf(fan, 0, cap), tau, std::vector<GradedDims>(f.size())};
  const ComplementOrder order_kind = policy == LiftPolicy::Forward ? ComplementOrder::Forward : ComplementOrder::Reverse;
  for (ConeId rho : order) {
    if (rho == tau) {
      out.sheaf.set_stalk(rho, free_stalk(f, rho, {0}, 0, cap).module());
      out.generators[rho] = GradedDims{{0, 1}};
      continue;
    }
    Sections n = sections(out.sheaf, boundary(f, rho));
    Generators g = minimal_generators(n.module(), order_kind);
    if (g.near_cap) {
      throw Error(ErrorKind::CapTooSmall, "boundary sections of cone " + std::to_string(rho) +
                                              " have generators near the cap");
    }
    std::vector<std::pair<int, std::size_t>> chosen;
    for (const auto& [d, idx] : g.complement) {
      for (auto i : idx) chosen.emplace_back(d, i);
    }
    install_lifted_stalk(out.sheaf, rho, n, chosen);
    out.generators[rho] = g.dims;
  }
  return out;
}

inline MinimalSheaf minimal_sheaf(const FanPtr& fan, ConeId tau) {
  return minimal_sheaf(fan, tau, default_cap(*fan));
}

/// Checks the defining conditions of a minimal sheaf based at tau: support in
/// Star(tau), membership in the category (flabby, locally free), and the
/// boundary map on minimal generators being bijective off tau.
inline CheckResult verify_minimal(const Sheaf& f, ConeId tau) {
  const Fan& fan = *f.fan();
  for (ConeId c : f.support()) {
    if (!fan.is_face(tau, c)) return CheckResult::fail(c, f.lo(), "stalk outside Star of the base cone");
  }
  if (f.stalk(tau).is_zero()) return CheckResult::fail(tau, f.lo(), "stalk at the base cone vanishes");
  LocalFreeness lf = is_locally_free(f);
  if (!lf.free) return {false, lf.witness};
  CheckResult flabby = is_flabby(f);
  if (!flabby.ok) return flabby;
  const Subposet above = star(fan, tau);
  for (ConeId rho : above.cones()) {
    if (rho == tau) continue;
    BoundaryData b = boundary_data(f, rho);
    for (int d = f.lo(); d <= f.hi(); ++d) {
      const std::size_t r = bar_rank(b, d);
      if (r != bar_dim(f.stalk(rho), d) || r != bar_dim(b.boundary.module(), d)) {
        return CheckResult::fail(rho, d, "generator map to the boundary is not bijective");
      }
    }
  }
  return CheckResult::pass();
}

}  // namespace fanih
