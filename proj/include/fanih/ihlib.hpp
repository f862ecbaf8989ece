#pragma once

// Intersection cohomology of fans: IH, local IP, the local-global
// relations, duality, convexity of conewise linear functions and the rank
// tables of Lefschetz operators.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanih/cellular.hpp"
#include "fanih/error.hpp"
#include "fanih/fan.hpp"
#include "fanih/graded.hpp"
#include "fanih/minimal.hpp"
#include "fanih/sheaf.hpp"

namespace fanih {

struct IHResult {
  std::shared_ptr<const MinimalSheaf> minimal;
  std::shared_ptr<const Sections> global;
  Generators generators;
  Polynomial ih;

  const FanPtr& fan() const { return minimal->sheaf.fan(); }
  const Sheaf& sheaf() const { return minimal->sheaf; }
  const GradedModule& sections_module() const { return global->module(); }

  Polynomial ip(ConeId c) const { return minimal->generators.at(c).to_polynomial(); }
};

inline IHResult ih(const FanPtr& fan, int cap, LiftPolicy policy = LiftPolicy::Forward) {
  auto l = std::make_shared<const MinimalSheaf>(minimal_sheaf(fan, fan->origin(), cap, policy));
  auto g = std::make_shared<const Sections>(sections(l->sheaf, whole(*fan)));
  Generators gens = minimal_generators(g->module());
  if (gens.near_cap) {
    throw Error(ErrorKind::CapTooSmall, "global sections have generators near the cap " + std::to_string(cap));
  }
  Polynomial p = gens.dims.to_polynomial();
  return {std::move(l), std::move(g), std::move(gens), std::move(p)};
}

inline IHResult ih(const FanPtr& fan) { return ih(fan, default_cap(*fan)); }

/// Local intersection cohomology: generators of the stalk at sigma of the
/// minimal sheaf on [sigma].
inline Polynomial ip(const FanPtr& fan, ConeId sigma, int cap) {
  MinimalSheaf l = minimal_sheaf(fan, fan->origin(), cap, LiftPolicy::Forward, generated(*fan, {sigma}));
  return l.generators.at(sigma).to_polynomial();
}

inline Polynomial ip(const FanPtr& fan, ConeId sigma) { return ip(fan, sigma, default_cap(*fan)); }

/// ih of the projected boundary fan; 1 for cones of dimension at most 1.
inline Polynomial ih_local(const FanPtr& fan, ConeId sigma) {
  if (fan->dim(sigma) <= 1) return Polynomial::constant(1);
  BoundaryProjection bp = boundary_projection(fan, sigma);
  return ih(bp.fan).ih;
}

/// Multiplication by a conewise linear function on global sections, as a map
/// Gamma_d -> Gamma_{d+2} in section coordinates.  `form_of` gives a linear
/// form agreeing with the function on each cone.
inline Matrix multiply_sections(const Sheaf& f, const Sections& g, const std::function<const Vector&(ConeId)>& form_of,
                                int d) {
  const Matrix& inc = g.sub.inclusion(d);
  Matrix big(g.sum.module.dim(d + 2), inc.cols());
  for (ConeId c : g.cones) {
    const std::size_t src = f.stalk(c).dim(d);
    const std::size_t dst = f.stalk(c).dim(d + 2);
    if (src == 0 || dst == 0) continue;
    auto [r_in, n_in] = g.block(c, d, src);
    auto [r_out, n_out] = g.block(c, d + 2, dst);
    Matrix part = f.stalk(c).act_form(form_of(c), d) * inc.block(r_in, 0, n_in, inc.cols());
    big.set_block(r_out, 0, part);
  }
  return g.coordinates(d + 2, big);
}

inline Matrix multiply_sections(const IHResult& r, const PiecewiseLinearFunction& l, int d) {
  if (l.fan().get() != r.fan().get()) throw std::invalid_argument("function lives on a different fan");
  return multiply_sections(r.sheaf(), *r.global, [&](ConeId c) -> const Vector& { return l.form_on(c); }, d);
}

// ---------------------------------------------------------------------------
// Checks

struct IdentityReport {
  bool pass = false;
  Polynomial lhs;
  Polynomial rhs;
  std::optional<int> witness_degree;
};

inline std::optional<int> first_difference(const Polynomial& a, const Polynomial& b) {
  Polynomial diff = a - b;
  if (diff.is_zero()) return std::nullopt;
  return diff.min_exponent();
}

/// dim (IH(boundary fan) / l IH)_j = ip_j(sigma) for d(sigma) >= 2.
inline IdentityReport ip_quotient_check(const FanPtr& fan, ConeId sigma, const Polynomial& ip_sigma) {
  if (fan->dim(sigma) < 2) throw Error(ErrorKind::DimensionTooSmall, "quotient identity needs dimension >= 2");
  BoundaryProjection bp = boundary_projection(fan, sigma);
  IHResult r = ih(bp.fan);
  const GradedModule& g = r.sections_module();
  IdentityReport rep;
  for (int j = g.lo(); j <= g.hi(); ++j) {
    std::vector<Matrix> parts{g.positive_part(j)};
    if (g.in_range(j - 2)) parts.push_back(multiply_sections(r, bp.function, j - 2));
    const std::size_t q = g.dim(j) - rank(hstack(parts, g.dim(j)));
    rep.lhs.add(j, static_cast<std::int64_t>(q));
  }
  rep.rhs = ip_sigma;
  rep.witness_degree = first_difference(rep.lhs, rep.rhs);
  rep.pass = !rep.witness_degree;
  return rep;
}

inline IdentityReport ip_quotient_check(const FanPtr& fan, ConeId sigma) {
  return ip_quotient_check(fan, sigma, ip(fan, sigma));
}

/// ih = sum over cones of (q^2 - 1)^(n - dim) ip on a complete fan.
inline IdentityReport global_local_check(const IHResult& r) {
  const Fan& fan = *r.fan();
  if (!fan.is_complete()) throw Error(ErrorKind::NotInCategory, "global-local formula needs a complete fan");
  IdentityReport rep;
  rep.lhs = r.ih;
  const Polynomial base = Polynomial{{2, 1}, {0, -1}};
  for (const auto& c : fan.cones()) {
    rep.rhs += base.pow(static_cast<unsigned>(fan.ambient_dim() - c.dim)) * r.ip(c.id);
  }
  rep.witness_degree = first_difference(rep.lhs, rep.rhs);
  rep.pass = !rep.witness_degree;
  return rep;
}

struct DualityReport {
  bool complete = false;
  bool palindrome = true;
  bool ends = true;
  bool even = true;
  bool costalks = true;
  std::optional<Witness> witness;

  bool pass() const { return palindrome && ends && even && costalks; }
};

/// Reverses generator degrees j -> 2 d - j.
inline Polynomial reversed(const Polynomial& p, int d) {
  Polynomial out;
  for (const auto& [e, c] : p.terms()) out.add(2 * d - e, c);
  return out;
}

/// Palindromic ih on complete fans, and costalk generators of L equal to the
/// reversed stalk generators at every cone.
inline DualityReport duality_check(const IHResult& r) {
  const Fan& fan = *r.fan();
  const int n = fan.ambient_dim();
  DualityReport rep;
  rep.complete = fan.is_complete();
  for (const auto& [e, c] : r.ih.terms()) {
    if (e < 0 || e % 2 != 0 || c < 0) rep.even = false;
  }
  if (rep.complete) {
    rep.palindrome = r.ih.palindromic_about(n) && r.ih.max_exponent() <= 2 * n;
    rep.ends = r.ih[0] == 1 && r.ih[2 * n] == 1;
  } else {
    rep.ends = r.ih[0] == 1;
  }
  for (const auto& c : fan.cones()) {
    GradedModule k = costalk(r.sheaf(), c.id);
    Polynomial got = minimal_generators(k).dims.to_polynomial();
    Polynomial want = reversed(r.ip(c.id), c.dim);
    if (!(got == want)) {
      rep.costalks = false;
      if (!rep.witness) rep.witness = Witness{c.id, first_difference(got, want).value_or(0), "costalk generators"};
    }
  }
  return rep;
}

/// Predicted ip_j(sigma) = ih_j(sigma) - ih_{j-2}(sigma) for j <= d(sigma) - 1;
/// holds whenever the Lefschetz property holds for the boundary fan.
inline Polynomial ip_from_local_ih(const Polynomial& ih_sigma, int dim_sigma) {
  Polynomial out;
  for (int j = 0; j <= dim_sigma - 1; ++j) out.add(j, ih_sigma[j] - ih_sigma[j - 2]);
  return out;
}

// ---------------------------------------------------------------------------
// Convexity and Lefschetz operators

enum class Convexity { StrictlyConvex, Convex, Neither };

inline std::string to_string(Convexity c) {
  switch (c) {
    case Convexity::StrictlyConvex: return "strictly_convex";
    case Convexity::Convex: return "convex";
    case Convexity::Neither: return "neither";
  }
  return "neither";
}

/// Wall test: for maximal cones sigma, sigma' sharing a wall, the linear
/// piece of sigma must lie below the function at an interior point of sigma'.
inline Convexity convexity(const PiecewiseLinearFunction& l) {
  const Fan& fan = *l.fan();
  const auto& maxc = fan.maximal_cones();
  auto form_index = [&](ConeId c) {
    return static_cast<std::size_t>(std::find(maxc.begin(), maxc.end(), c) - maxc.begin());
  };
  bool strict = true;
  for (ConeId w : fan.cones_of_dim(fan.ambient_dim() - 1)) {
    const auto& around = fan.cofacets(w);
    if (around.size() != 2) continue;
    for (int k = 0; k < 2; ++k) {
      const ConeId s = around[static_cast<std::size_t>(k)];
      const ConeId t = around[static_cast<std::size_t>(1 - k)];
      const Vector p = fan.interior_point(t);
      const int sign = sgn(dot(l.forms()[form_index(s)], p) - dot(l.forms()[form_index(t)], p));
      if (sign > 0) return Convexity::Neither;
      if (sign == 0) strict = false;
    }
  }
  return strict ? Convexity::StrictlyConvex : Convexity::Convex;
}

struct LefschetzPower {
  int power;
  int from;
  int to;
  std::size_t source_dim;
  std::size_t target_dim;
  std::size_t rank;
  bool bijective() const { return rank == source_dim && rank == target_dim; }
};

struct LefschetzStep {
  int from;
  std::size_t source_dim;
  std::size_t target_dim;
  std::size_t rank;
  bool expect_injective;
  bool expect_surjective;
  bool injective() const { return rank == source_dim; }
  bool surjective() const { return rank == target_dim; }
  bool as_expected() const { return (!expect_injective || injective()) && (!expect_surjective || surjective()); }
};

struct LefschetzReport {
  std::vector<LefschetzPower> powers;
  std::vector<LefschetzStep> steps;

  bool all_bijective() const {
    return std::all_of(powers.begin(), powers.end(), [](const LefschetzPower& p) { return p.bijective(); });
  }
  bool steps_as_expected() const {
    return std::all_of(steps.begin(), steps.end(), [](const LefschetzStep& s) { return s.as_expected(); });
  }
};

/// Rank of l^i : IH_(n-i) -> IH_(n+i) for each admissible i, plus the single
/// steps IH_j -> IH_(j+2).
inline LefschetzReport lefschetz_ranks(const IHResult& r, const PiecewiseLinearFunction& l) {
  if (convexity(l) != Convexity::StrictlyConvex) {
    throw Error(ErrorKind::NotStrictlyConvex, "Lefschetz operator needs a strictly convex function");
  }
  const int n = r.fan()->ambient_dim();
  const GradedModule& g = r.sections_module();
  // Images of l^k applied to generator representatives, keyed by the power.
  auto image = [&](int from, int power) {
    Matrix cur(g.dim(from), 0);
    auto it = r.generators.complement.find(from);
    if (it != r.generators.complement.end()) {
      cur = Matrix(g.dim(from), it->second.size());
      for (std::size_t k = 0; k < it->second.size(); ++k) cur(it->second[k], k) = 1;
    }
    for (int s = 0; s < power; ++s) cur = multiply_sections(r, l, from + 2 * s) * cur;
    return cur;
  };
  auto bar_rank_of = [&](int to, const Matrix& m) {
    Matrix pos = g.positive_part(to);
    return rank(hstack({pos, m}, g.dim(to))) - rank(pos);
  };
  auto ih_dim = [&](int d) { return static_cast<std::size_t>(r.ih[d]); };
  LefschetzReport rep;
  for (int i = n % 2; i <= n; i += 2) {
    if (i == 0) continue;
    const int from = n - i;
    const int to = n + i;
    if (!g.in_range(to)) continue;
    rep.powers.push_back({i, from, to, ih_dim(from), ih_dim(to), bar_rank_of(to, image(from, i))});
  }
  for (int j = 0; j + 2 <= 2 * n && g.in_range(j + 2); j += 2) {
    rep.steps.push_back(
        {j, ih_dim(j), ih_dim(j + 2), bar_rank_of(j + 2, image(j, 1)), j <= n - 1, j >= n - 1});
  }
  return rep;
}

}  // namespace fanih
