// fanih: intersection cohomology of fans from JSON documents.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fanih/checks.hpp"
#include "fanih/decomp.hpp"
#include "fanih/io.hpp"
#include "fanih/stanley.hpp"

namespace {

using namespace fanih;
using io::Json;

constexpr int kPass = 0;
constexpr int kFailed = 1;
constexpr int kInvalid = 2;

struct Options {
  std::optional<int> cap;
  bool json = false;
  int threads = 1;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CheckFailed:
    case ErrorKind::SignInconsistency:
    case ErrorKind::NegativeMultiplicity:
      return kFailed;
    default:
      return kInvalid;
  }
}

void emit(const Options& opt, const Json& j, const std::string& table) {
  if (opt.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << table;
  }
}

int cap_for(const Options& opt, const Fan& f) {
  const int cap = opt.cap.value_or(default_cap(f));
  check_cap(cap);
  return cap;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string rays_text(const RaySet& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "}";
}

/// A cone given by id ("7") or by its ray indices ("[0,2]").
ConeId parse_cone(const Fan& f, const std::string& text) {
  if (!text.empty() && text.front() == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception&) {
      throw Error(ErrorKind::Parse, "bad cone " + text);
    }
    RaySet rs;
    for (const auto& x : j) rs.push_back(x.get<std::size_t>());
    std::sort(rs.begin(), rs.end());
    auto id = f.find(rs);
    if (!id) throw Error(ErrorKind::UnknownCone, "no cone with rays " + text);
    return *id;
  }
  std::size_t used = 0;
  unsigned long id = 0;
  try {
    id = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw Error(ErrorKind::Parse, "bad cone " + text);
  if (id >= f.size()) throw Error(ErrorKind::UnknownCone, "no cone with id " + text);
  return static_cast<ConeId>(id);
}

/// Fan documents are read directly; polytope documents give the fan of the
/// cone over the polytope.
io::FanDocument load_fan_like(const std::string& path) {
  Json doc = io::load_json(path);
  if (doc.is_object() && doc.contains("vertices")) {
    io::PolytopeDocument p = io::parse_polytope(doc);
    io::FanDocument fd;
    fd.fan = cone_over_polytope(p.dim, p.vertices);
    for (ConeId m : fd.fan->maximal_cones()) fd.listed_max_cones.push_back(fd.fan->cone(m).rays);
    return fd;
  }
  return io::parse_fan(doc);
}

PiecewiseLinearFunction gauge(const FanPtr& fan) {
  return PiecewiseLinearFunction::from_ray_values(fan, std::vector<Rational>(fan->rays().size(), 1));
}

// ---------------------------------------------------------------------------

int run_check(const Options& opt, const std::string& input) {
  io::FanDocument fd = io::parse_fan(io::load_json(input));
  std::optional<PiecewiseLinearFunction> l;
  if (fd.function) {
    l = io::parse_function(*fd.function, fd);
  } else if (fd.fan->is_complete()) {
    try {
      l = gauge(fd.fan);
    } catch (const Error&) {
      // No conewise linear function takes the value 1 on every ray.
    }
  }
  SuiteReport rep = run_check_suite(fd.fan, cap_for(opt, *fd.fan), l);
  std::ostringstream t;
  t << "ih = " << rep.ih.to_string() << "\n";
  for (const auto& c : rep.checks) {
    t << pad(c.name, 40) << (c.pass ? "pass" : "FAIL");
    if (!c.pass) t << "  " << c.witness.dump();
    t << "\n";
  }
  // Findings repeat per cone; the table shows one tally per name.
  std::map<std::string, std::pair<int, int>> tally;
  std::vector<std::string> names;
  for (const auto& f : rep.findings) {
    if (!tally.count(f.name)) names.push_back(f.name);
    auto& [holds, total] = tally[f.name];
    holds += f.holds;
    ++total;
  }
  for (const auto& name : names) {
    t << "finding " << pad(name, 32) << tally[name].first << "/" << tally[name].second << " hold\n";
  }
  emit(opt, rep.to_json(), t.str());
  return rep.pass() ? kPass : kFailed;
}

int run_ih(const Options& opt, const std::string& input) {
  io::FanDocument fd = io::parse_fan(io::load_json(input));
  IHResult r = ih(fd.fan, cap_for(opt, *fd.fan));
  emit(opt, {{"ih", io::to_json(r.ih)}}, "ih = " + r.ih.to_string() + "\n");
  return kPass;
}

int run_ip(const Options& opt, const std::string& input, const std::optional<std::string>& cone) {
  io::FanDocument fd = load_fan_like(input);
  const Fan& f = *fd.fan;
  MinimalSheaf l = minimal_sheaf(fd.fan, f.origin(), cap_for(opt, f));
  if (cone) {
    const ConeId c = parse_cone(f, *cone);
    Json j = io::cone_json(f, c);
    j["ip"] = io::to_json(l.generators[c]);
    emit(opt, j, "ip(" + std::to_string(c) + ") = " + l.generators[c].to_polynomial().to_string() + "\n");
    return kPass;
  }
  std::ostringstream t;
  t << pad("cone", 6) << pad("dim", 5) << pad("rays", 20) << "ip\n";
  for (ConeId c = 0; c < f.size(); ++c) {
    t << pad(std::to_string(c), 6) << pad(std::to_string(f.dim(c)), 5) << pad(rays_text(f.cone(c).rays), 20)
      << l.generators[c].to_polynomial().to_string() << "\n";
  }
  Json j = io::generator_table(f, l.generators);
  for (auto& row : j) row["ip"] = std::move(row["generators"]), row.erase("generators");
  emit(opt, {{"ip", j}}, t.str());
  return kPass;
}

int run_decompose(const Options& opt, const std::string& fine_path, const std::string& coarse_path,
                  const std::string& which) {
  io::FanDocument fine = io::parse_fan(io::load_json(fine_path));
  io::FanDocument coarse = io::parse_fan(io::load_json(coarse_path));
  SubdivisionMap m = subdivision_map(fine.fan, coarse.fan);
  const int cap = cap_for(opt, *fine.fan);
  Sheaf f = which == "structure" ? structure_sheaf(fine.fan, cap) : minimal_sheaf(fine.fan, fine.fan->origin(), cap).sheaf;
  Sheaf pushed = pushforward(m, f);
  Decomposition dec = decompose(pushed);
  const bool rebuilt = !reconstruction_failure(pushed, dec);
  const bool preserved = sections(pushed, whole(*coarse.fan)).module().hilbert() == sections(f, whole(*fine.fan)).module().hilbert();

  Json checks = Json::array();
  std::ostringstream t;
  auto add = [&](const std::string& name, bool pass, Json witness) {
    checks.push_back({{"name", name}, {"pass", pass}, {"witness", std::move(witness)}});
    t << pad(name, 40) << (pass ? "pass" : "FAIL") << "\n";
  };
  add("reconstruction", rebuilt, nullptr);
  add("sections_preserved", preserved, nullptr);
  Json out{{"decomposition", io::to_json(dec)}};
  if (which == "minimal") {
    const std::int64_t origin = dec.mult(coarse.fan->origin(), 0);
    add("origin_multiplicity_one", origin == 1, {{"mult", origin}});
    if (fine.fan->is_complete()) {
      const Polynomial ih_fine = ih(fine.fan, cap).ih;
      const Polynomial ih_coarse = ih(coarse.fan, cap).ih;
      add("ih_dominates", dominates(ih_fine, ih_coarse), {{"fine", io::to_json(ih_fine)}, {"coarse", io::to_json(ih_coarse)}});
    }
  }
  out["checks"] = checks;
  std::ostringstream head;
  head << "summands (cone, shift, mult):";
  for (const auto& s : dec.summands) head << " (" << s.cone << ", " << s.shift << ", " << s.mult << ")";
  head << "\n";
  emit(opt, out, head.str() + t.str());
  bool ok = true;
  for (const auto& c : checks) ok = ok && c["pass"].get<bool>();
  return ok ? kPass : kFailed;
}

int run_lefschetz(const Options& opt, const std::string& input, const std::optional<std::string>& l_path) {
  io::FanDocument fd = io::parse_fan(io::load_json(input));
  if (!fd.fan->is_complete()) throw Error(ErrorKind::NotInCategory, "Lefschetz ranks need a complete fan");
  PiecewiseLinearFunction l = l_path ? io::parse_function(io::load_json(*l_path), fd)
                              : fd.function ? io::parse_function(*fd.function, fd)
                                            : gauge(fd.fan);
  IHResult r = ih(fd.fan, cap_for(opt, *fd.fan));
  LefschetzReport rep = lefschetz_ranks(r, l);
  std::ostringstream t;
  t << "ih = " << r.ih.to_string() << "\n";
  for (const auto& p : rep.powers) {
    t << "l^" << p.power << ": IH_" << p.from << " -> IH_" << p.to << "  rank " << p.rank << " of " << p.source_dim
      << (p.bijective() ? "  bijective" : "  not bijective") << "\n";
  }
  for (const auto& s : rep.steps) {
    t << "l: IH_" << s.from << " -> IH_" << s.from + 2 << "  rank " << s.rank << (s.as_expected() ? "" : "  unexpected")
      << "\n";
  }
  Json j = lefschetz_json(rep);
  j["ih"] = io::to_json(r.ih);
  j["finding"] = rep.all_bijective() && rep.steps_as_expected();
  emit(opt, j, t.str());
  return kPass;
}

int run_stanley(const Options& opt, const std::string& input) {
  Json doc = io::load_json(input);
  if (doc.is_object() && doc.contains("faces")) {
    GHPair gh = gh_vectors(io::parse_lattice(doc));
    emit(opt, {{"h", io::to_json(gh.h)}, {"g", io::to_json(gh.g)}},
         "h = " + gh.h.to_string('t') + "\ng = " + gh.g.to_string('t') + "\n");
    return kPass;
  }
  io::PolytopeDocument p = io::parse_polytope(doc);
  StanleyComparison c = compare_ih_h(p.dim, p.vertices);
  Json j{{"h", io::to_json(c.gh.h)},
         {"g", io::to_json(c.gh.g)},
         {"ih", io::to_json(c.ih_sigma)},
         {"ip", io::to_json(c.ip_sigma)},
         {"checks",
          Json::array({{{"name", "ih_equals_h"}, {"pass", c.ih_matches}, {"witness", nullptr}},
                       {{"name", "ip_equals_g"}, {"pass", c.ip_matches}, {"witness", nullptr}}})}};
  std::ostringstream t;
  t << "h = " << c.gh.h.to_string('t') << "\ng = " << c.gh.g.to_string('t') << "\nih = " << c.ih_sigma.to_string()
    << "\nip = " << c.ip_sigma.to_string() << "\n"
    << pad("ih_equals_h", 40) << (c.ih_matches ? "pass" : "FAIL") << "\n"
    << pad("ip_equals_g", 40) << (c.ip_matches ? "pass" : "FAIL") << "\n";
  emit(opt, j, t.str());
  return c.pass() ? kPass : kFailed;
}

int run_kalai(const Options& opt, const std::string& input, const std::string& cone, const std::string& face) {
  io::FanDocument fd = load_fan_like(input);
  const ConeId sigma = parse_cone(*fd.fan, cone);
  const ConeId tau = parse_cone(*fd.fan, face);
  KalaiReport k = kalai_check(fd.fan, sigma, tau);
  Json j{{"ip_sigma", io::to_json(k.ip_sigma)},
         {"ip_tau", io::to_json(k.ip_tau)},
         {"ip_star", io::to_json(k.ip_star)},
         {"v_tau", io::to_json(k.v_tau)},
         {"checks",
          Json::array({{{"name", "multiplicity_is_ip_tau"}, {"pass", k.v_matches}, {"witness", nullptr}},
                       {{"name", "inequality"}, {"pass", k.inequality}, {"witness", nullptr}}})}};
  std::ostringstream t;
  t << "ip(sigma) = " << k.ip_sigma.to_string() << "\nip(tau) = " << k.ip_tau.to_string()
    << "\nip(Star tau) = " << k.ip_star.to_string() << "\n"
    << pad("multiplicity_is_ip_tau", 40) << (k.v_matches ? "pass" : "FAIL") << "\n"
    << pad("inequality", 40) << (k.inequality ? "pass" : "FAIL") << "\n";
  emit(opt, j, t.str());
  return k.pass() ? kPass : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial intersection cohomology of rational polyhedral fans"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options opt;
  app.add_option("--cap", opt.cap, "top degree computed (even, at least 2; default 2n+2)");
  app.add_flag("--json", opt.json, "print JSON instead of tables");
  app.add_option("--threads", opt.threads, "worker count (at least 1)")->check(CLI::Range(1, 1024));

  std::string input, onto, sheaf_kind = "minimal";
  std::optional<std::string> cone, l_path;
  std::string kalai_cone, kalai_face;

  auto* check = app.add_subcommand("check", "validate a fan and run the invariant suite");
  check->add_option("input", input, "fan document")->required();
  auto* ihc = app.add_subcommand("ih", "intersection cohomology Betti numbers");
  ihc->add_option("input", input, "fan document")->required();
  auto* ipc = app.add_subcommand("ip", "local generator degrees per cone");
  ipc->add_option("input", input, "fan or polytope document")->required();
  ipc->add_option("--cone", cone, "cone id or ray list such as [0,2]");
  auto* dec = app.add_subcommand("decompose", "split the direct image under a subdivision");
  dec->add_option("input", input, "fine fan document")->required();
  dec->add_option("--onto", onto, "coarse fan document")->required();
  dec->add_option("--sheaf", sheaf_kind, "sheaf on the fine fan")->check(CLI::IsMember({"minimal", "structure"}));
  auto* lef = app.add_subcommand(
      "lefschetz",
      "rank tables of multiplication by a strictly convex function; convex means every linear piece lies "
      "below the function off its cone");
  lef->add_option("input", input, "complete fan document")->required();
  lef->add_option("--l", l_path, "function document (default: the embedded function, else value 1 on every ray)");
  auto* st = app.add_subcommand("stanley", "generalized h and g of a polytope or Eulerian lattice");
  st->add_option("input", input, "polytope or lattice document")->required();
  auto* ka = app.add_subcommand("kalai", "Kalai's inequality for a cone and a face");
  ka->add_option("input", input, "fan of one cone, or a polytope document")->required();
  ka->add_option("--cone", kalai_cone, "the maximal cone")->required();
  ka->add_option("--face", kalai_face, "a face of it")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  try {
    if (opt.cap) check_cap(*opt.cap);
    if (*check) return run_check(opt, input);
    if (*ihc) return run_ih(opt, input);
    if (*ipc) return run_ip(opt, input, cone);
    if (*dec) return run_decompose(opt, input, onto, sheaf_kind);
    if (*lef) return run_lefschetz(opt, input, l_path);
    if (*st) return run_stanley(opt, input);
    if (*ka) return run_kalai(opt, input, kalai_cone, kalai_face);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (opt.json) std::cout << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << "\n";
    return exit_code_for(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
