#pragma once

// The full invariant suite run by `fanih check`, as structured results.
// Checks are assertions; findings report identities that depend on the
// Lefschetz property and never count as failures.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanih/cellular.hpp"
#include "fanih/decomp.hpp"
#include "fanih/ihlib.hpp"
#include "fanih/io.hpp"
#include "fanih/minimal.hpp"
#include "fanih/sheaf.hpp"

namespace fanih {

struct CheckEntry {
  std::string name;
  bool pass;
  io::Json witness;
};

struct Finding {
  std::string name;
  bool holds;
  io::Json detail;
};

struct SuiteReport {
  Polynomial ih;
  std::vector<CheckEntry> checks;
  std::vector<Finding> findings;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
  }

  io::Json to_json() const {
    io::Json checks_j = io::Json::array();
    for (const auto& c : checks) checks_j.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    io::Json findings_j = io::Json::array();
    for (const auto& f : findings) findings_j.push_back({{"name", f.name}, {"holds", f.holds}, {"detail", f.detail}});
    return {{"ih", io::to_json(ih)}, {"checks", checks_j}, {"findings", findings_j}};
  }
};

inline io::Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"cone", w->cone}, {"degree", w->degree}, {"reason", w->reason}};
}

inline CheckEntry entry(std::string name, const CheckResult& r) { return {std::move(name), r.ok, witness_json(r.witness)}; }

inline io::Json lefschetz_json(const LefschetzReport& r) {
  io::Json powers = io::Json::array();
  for (const auto& p : r.powers) {
    powers.push_back({{"power", p.power},
                      {"from", p.from},
                      {"to", p.to},
                      {"source_dim", p.source_dim},
                      {"target_dim", p.target_dim},
                      {"rank", p.rank},
                      {"bijective", p.bijective()}});
  }
  io::Json steps = io::Json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"from", s.from},
                     {"rank", s.rank},
                     {"injective", s.injective()},
                     {"surjective", s.surjective()},
                     {"expect_injective", s.expect_injective},
                     {"expect_surjective", s.expect_surjective}});
  }
  return {{"powers", powers}, {"steps", steps}};
}

/// Runs every applicable check on the fan.  `l`, when strictly convex on a
/// complete fan, feeds the Lefschetz finding.
inline SuiteReport run_check_suite(const FanPtr& fan, int cap,
                                   const std::optional<PiecewiseLinearFunction>& l = std::nullopt) {
  SuiteReport rep;
  const Fan& f = *fan;
  IHResult r = ih(fan, cap);
  const Sheaf& sheaf = r.sheaf();
  rep.ih = r.ih;

  rep.checks.push_back(entry("module_structure", module_structure(sheaf)));
  rep.checks.push_back(entry("chain_independence", chain_independence(sheaf)));
  try {
    cellular_complex(sheaf);
    cellular_complex(structure_sheaf(fan, cap));
    rep.checks.push_back({"d_squared_zero", true, nullptr});
  } catch (const Error& e) {
    rep.checks.push_back({"d_squared_zero", false, e.what()});
  }
  rep.checks.push_back(entry("sections_match_stalks", sections_match_stalks(sheaf)));
  rep.checks.push_back(entry("minimal_sheaf_conditions", verify_minimal(sheaf, f.origin())));

  {
    // Nonnegative even degrees everywhere, a one-dimensional degree-0 layer.
    bool ok = true;
    io::Json w = nullptr;
    auto inspect = [&](const Polynomial& p, const std::string& what) {
      for (const auto& [e, c] : p.terms()) {
        if (ok && (e < 0 || e % 2 != 0 || c < 0)) {
          ok = false;
          w = {{"where", what}, {"degree", e}};
        }
      }
      if (ok && p[0] != 1) {
        ok = false;
        w = {{"where", what}, {"degree", 0}};
      }
    };
    inspect(r.ih, "ih");
    for (ConeId c = 0; c < f.size(); ++c) inspect(r.ip(c), "ip of cone " + std::to_string(c));
    rep.checks.push_back({"evenness", ok, w});
  }

  {
    const bool flabby = is_flabby(structure_sheaf(fan, cap)).ok;
    bool l_is_a = true;
    for (ConeId c = 0; c < f.size(); ++c) l_is_a = l_is_a && r.minimal->generators[c] == GradedDims{{0, 1}};
    const bool simp = f.is_simplicial();
    rep.checks.push_back({"structure_sheaf_flabby_iff_simplicial", flabby == simp,
                          {{"simplicial", simp}, {"flabby", flabby}}});
    rep.checks.push_back({"minimal_equals_structure_iff_simplicial", l_is_a == simp,
                          {{"simplicial", simp}, {"minimal_is_structure", l_is_a}}});
  }

  const bool complete = f.is_complete();
  if (complete) {
    AcyclicityReport ac = acyclicity_report(sheaf);
    io::Json w = nullptr;
    if (!ac.pass()) {
      w = {{"reason", ac.reason}};
      if (ac.witness) w["i"] = ac.witness->first, w["degree"] = ac.witness->second;
    }
    rep.checks.push_back({"acyclicity", ac.acyclic, w});
    rep.checks.push_back({"global_sections_free", ac.free, {{"free_gens", io::to_json(ac.free_gens)}}});
    const Polynomial denominator = Polynomial{{0, 1}, {2, -1}}.pow(static_cast<unsigned>(f.ambient_dim()));
    const Polynomial numerator = (ac.h0_hilbert * denominator).truncated(cap);
    rep.checks.push_back({"hilbert_numerator_is_ih", numerator == r.ih, {{"numerator", io::to_json(numerator)}}});
    IdentityReport gl = global_local_check(r);
    rep.checks.push_back({"global_local",
                          gl.pass,
                          {{"lhs", io::to_json(gl.lhs)}, {"rhs", io::to_json(gl.rhs)}}});
  }

  {
    DualityReport du = duality_check(r);
    io::Json w = witness_json(du.witness);
    if (w.is_null() && !du.pass()) w = {{"palindrome", du.palindrome}, {"ends", du.ends}, {"even", du.even}};
    rep.checks.push_back({"duality", du.pass(), w});
  }

  {
    bool ok = true;
    io::Json w = nullptr;
    io::Json detail = io::Json::array();
    for (const auto& c : f.cones()) {
      if (c.dim < 2) continue;
      IdentityReport q = ip_quotient_check(fan, c.id, r.ip(c.id));
      if (!q.pass && ok) {
        ok = false;
        w = {{"cone", c.id}, {"degree", *q.witness_degree}, {"quotient", io::to_json(q.lhs)}, {"ip", io::to_json(q.rhs)}};
      }
      const Polynomial local = ih_local(fan, c.id);
      const Polynomial predicted = ip_from_local_ih(local, c.dim);
      const bool holds = predicted == r.ip(c.id);
      rep.findings.push_back({"local_ih_difference",
                              holds,
                              {{"cone", c.id},
                               {"ih_local", io::to_json(local)},
                               {"ip", io::to_json(r.ip(c.id))},
                               {"predicted", io::to_json(predicted)}}});
    }
    rep.checks.push_back({"ip_quotient", ok, w});
  }

  if (complete && l && convexity(*l) == Convexity::StrictlyConvex) {
    LefschetzReport lr = lefschetz_ranks(r, *l);
    rep.findings.push_back({"lefschetz", lr.all_bijective() && lr.steps_as_expected(), lefschetz_json(lr)});
  }
  return rep;
}

}  // namespace fanih
