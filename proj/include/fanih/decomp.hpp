#pragma once

// Splitting flabby locally free sheaves into shifted minimal sheaves,
// direct images under subdivisions, and the inequalities they imply.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanih/cellular.hpp"
#include "fanih/error.hpp"
#include "fanih/fan.hpp"
#include "fanih/graded.hpp"
#include "fanih/ihlib.hpp"
#include "fanih/minimal.hpp"
#include "fanih/sheaf.hpp"

namespace fanih {

struct Summand {
  ConeId cone;
  int shift;
  std::int64_t mult;

  friend bool operator==(const Summand& a, const Summand& b) {
    return a.cone == b.cone && a.shift == b.shift && a.mult == b.mult;
  }
};

struct Decomposition {
  std::vector<Summand> summands;
  std::vector<GradedDims> multiplicity;  // V_sigma per cone, by generator degree

  std::int64_t mult(ConeId c, int shift) const {
    for (const auto& s : summands) {
      if (s.cone == c && s.shift == shift) return s.mult;
    }
    return 0;
  }
};

/// Generator degrees of the minimal sheaves L^tau at every cone, built on
/// demand and cached.
class MinimalSheafCache {
 public:
  explicit MinimalSheafCache(FanPtr fan) : fan_(std::move(fan)) {}

  const MinimalSheaf& get(ConeId tau) {
    auto it = cache_.find(tau);
    if (it == cache_.end()) it = cache_.emplace(tau, minimal_sheaf(fan_, tau, default_cap(*fan_))).first;
    return it->second;
  }

 private:
  FanPtr fan_;
  std::map<ConeId, MinimalSheaf> cache_;
};

/// Multiplicity spaces V_sigma: the kernel of the generator map
/// F_sigma / A^+ -> Gamma(boundary(sigma); F) / A^+.  The triangular
/// bookkeeping against the minimal sheaves is verified along the way.
inline Decomposition decompose(const Sheaf& f) {
  const Fan& fan = *f.fan();
  LocalFreeness lf = is_locally_free(f);
  if (!lf.free) {
    throw Error(ErrorKind::NotInCategory, "stalk at cone " + std::to_string(lf.witness->cone) + " is not free");
  }
  MinimalSheafCache minimal(f.fan());
  Decomposition out;
  out.multiplicity.assign(fan.size(), {});
  for (ConeId s = 0; s < fan.size(); ++s) {
    BoundaryData b = boundary_data(f, s);
    GradedDims v;
    for (int d = f.lo(); d <= f.hi(); ++d) {
      const std::size_t target = b.boundary.module().dim(d);
      if (target && rank(b.map.at(d)) != target) {
        throw Error(ErrorKind::NotInCategory,
                    "sheaf is not flabby at cone " + std::to_string(s) + ", degree " + std::to_string(d));
      }
      const std::size_t k = bar_dim(f.stalk(s), d) - bar_rank(b, d);
      v.add(d, static_cast<std::int64_t>(k));
    }
    // Generators of F at s not accounted for by summands based at proper faces.
    Polynomial rest = lf.generators[s].to_polynomial();
    for (ConeId t : fan.faces_of(s)) {
      if (t == s || out.multiplicity[t].empty()) continue;
      rest -= minimal.get(t).generators[s].to_polynomial() * out.multiplicity[t].to_polynomial();
    }
    if (!rest.nonnegative()) {
      throw Error(ErrorKind::NegativeMultiplicity, "negative multiplicity at cone " + std::to_string(s));
    }
    if (!(rest == v.to_polynomial())) {
      throw Error(ErrorKind::CheckFailed, "multiplicity bookkeeping disagrees at cone " + std::to_string(s));
    }
    for (const auto& [e, m] : v.entries()) out.summands.push_back({s, -e, m});
    out.multiplicity[s] = std::move(v);
  }
  return out;
}

/// Re-sums the stalk generators predicted by a decomposition and compares
/// them with the actual ones; returns the first mismatching cone.
inline std::optional<ConeId> reconstruction_failure(const Sheaf& f, const Decomposition& dec) {
  const Fan& fan = *f.fan();
  MinimalSheafCache minimal(f.fan());
  for (ConeId s = 0; s < fan.size(); ++s) {
    Polynomial predicted;
    for (const auto& sm : dec.summands) {
      if (!fan.is_face(sm.cone, s)) continue;
      predicted += sm.mult * minimal.get(sm.cone).generators[s].to_polynomial().shifted(-sm.shift);
    }
    if (!(predicted == minimal_generators(f.stalk(s)).dims.to_polynomial())) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Direct image under subdivision

/// Stalk at a coarse cone sigma: sections over the fine cones mapping into
/// [sigma].  Restrictions forget the components outside the smaller preimage.
inline Sheaf pushforward(const SubdivisionMap& m, const Sheaf& f) {
  const Fan& coarse = *m.coarse;
  const Fan& fine = *m.fine;
  Sheaf out(m.coarse, f.lo(), f.hi());
  std::vector<Sections> stalks;
  for (ConeId s = 0; s < coarse.size(); ++s) {
    stalks.push_back(sections(f, Subposet(fine.size(), m.preimage_of_subfan(s), SubposetKind::Open)));
    out.set_stalk(s, stalks.back().module());
  }
  for (std::size_t i = 0; i < coarse.covers().size(); ++i) {
    const Cover& cv = coarse.covers()[i];
    const Sections& big = stalks[cv.cone];
    const Sections& small = stalks[cv.face];
    GradedMap r(f.lo(), f.hi());
    for (int d = f.lo(); d <= f.hi(); ++d) {
      // Position in big's direct sum of every coordinate of small's direct sum.
      std::vector<std::size_t> where;
      for (ConeId c : small.cones) {
        const std::size_t k = f.stalk(c).dim(d);
        const std::size_t base = big.block(c, d, k).first;
        for (std::size_t j = 0; j < k; ++j) where.push_back(base + j);
      }
      const Kernel& ks = small.sub.kernel_at(d);
      std::vector<std::size_t> rows;
      for (auto fc : ks.free_columns) rows.push_back(where[fc]);
      r.set(d, big.sub.inclusion(d).select_rows(rows));
    }
    out.set_restriction(i, std::move(r));
  }
  return out;
}

/// The verification route for freeness of a direct-image stalk at a
/// full-dimensional coarse cone: sections over the preimage subfan agree
/// with sections over the closed set Z of cones subdividing the interior,
/// the cellular complex of F extended by zero off Z has no higher
/// cohomology, and its H^0 is free.
struct PushforwardStalkReport {
  bool sections_agree = false;
  bool acyclic = false;
  bool free = false;
  bool pass() const { return sections_agree && acyclic && free; }
};

inline PushforwardStalkReport verify_pushforward_stalk(const SubdivisionMap& m, const Sheaf& f, ConeId sigma) {
  const Fan& fine = *m.fine;
  if (m.coarse->dim(sigma) != fine.ambient_dim()) {
    throw Error(ErrorKind::DimensionTooSmall, "verification route needs a full-dimensional coarse cone");
  }
  PushforwardStalkReport rep;
  Subposet psi(fine.size(), m.preimage_of_subfan(sigma), SubposetKind::Open);
  Subposet z(fine.size(), m.preimage(sigma), SubposetKind::Closed);
  Sections over_psi = sections(f, psi);
  Sections over_z = sections(f, z);
  rep.sections_agree = over_psi.module().hilbert() == over_z.module().hilbert();
  Sheaf mz = zero_outside(f, z);
  Cohomology h = complex_cohomology(cellular_complex(mz, psi));
  rep.acyclic = true;
  for (const auto& [i, g] : h.groups) {
    if (i != 0 && !g.is_zero()) rep.acyclic = false;
  }
  rep.acyclic = rep.acyclic && h.at(0) == over_psi.module().hilbert();
  rep.free = check_free(over_psi.module(), coordinate_forms(fine.ambient_dim())).free;
  return rep;
}

struct DecompositionTheoremReport {
  Polynomial ih_fine;
  Polynomial ih_coarse;
  Decomposition decomposition;
  std::int64_t origin_multiplicity = 0;
  bool sections_preserved = false;
  bool dominates = false;
  bool pass() const { return origin_multiplicity >= 1 && dominates && sections_preserved; }
};

inline DecompositionTheoremReport decomposition_theorem_report(const FanPtr& fine, const FanPtr& coarse) {
  SubdivisionMap m = subdivision_map(fine, coarse);
  IHResult lf = ih(fine);
  IHResult lc = ih(coarse);
  Sheaf pushed = pushforward(m, lf.sheaf());
  DecompositionTheoremReport rep;
  rep.ih_fine = lf.ih;
  rep.ih_coarse = lc.ih;
  rep.decomposition = decompose(pushed);
  rep.origin_multiplicity = rep.decomposition.mult(coarse->origin(), 0);
  rep.sections_preserved = sections(pushed, whole(*coarse)).module().hilbert() == lf.sections_module().hilbert();
  rep.dominates = dominates(rep.ih_fine, rep.ih_coarse);
  return rep;
}

// ---------------------------------------------------------------------------
// Kalai's inequality

struct KalaiReport {
  Polynomial ip_sigma;
  Polynomial ip_tau;
  Polynomial ip_star;
  GradedDims v_tau;
  bool v_matches = false;
  bool inequality = false;
  bool pass() const { return v_matches && inequality; }
};

/// For the fan [sigma] and a face tau: the star restriction of L splits with
/// multiplicity IP(tau) at tau, and ip(sigma) >= ip(tau) ip(Star(tau)).
inline KalaiReport kalai_check(const FanPtr& fan, ConeId sigma, ConeId tau) {
  const Fan& f = *fan;
  if (f.maximal_cones().size() != 1 || f.maximal_cones().front() != sigma) {
    throw Error(ErrorKind::NotInCategory, "Kalai check needs the fan generated by sigma");
  }
  if (!f.is_face(tau, sigma)) throw Error(ErrorKind::UnknownCone, "tau is not a face of sigma");
  const int cap = default_cap(f);
  MinimalSheaf l = minimal_sheaf(fan, f.origin(), cap);
  Decomposition dec = decompose(star_restriction(l.sheaf, tau));
  KalaiReport rep;
  rep.ip_sigma = l.generators[sigma].to_polynomial();
  rep.ip_tau = l.generators[tau].to_polynomial();
  rep.ip_star = minimal_sheaf(fan, tau, cap).generators[sigma].to_polynomial();
  rep.v_tau = dec.multiplicity[tau];
  rep.v_matches = rep.v_tau == l.generators[tau];
  rep.inequality = dominates(rep.ip_sigma, rep.ip_tau * rep.ip_star);
  return rep;
}

}  // namespace fanih
