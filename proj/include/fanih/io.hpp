#pragma once

// JSON documents: fans, polytopes, face lattices and conewise linear
// functions in; polynomials, generator tables and decompositions out.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fanih/decomp.hpp"
#include "fanih/error.hpp"
#include "fanih/fan.hpp"
#include "fanih/polynomial.hpp"
#include "fanih/stanley.hpp"

namespace fanih::io {

using Json = nlohmann::ordered_json;

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

inline Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
  throw Error(ErrorKind::Parse, "expected a rational as \"p/q\" text or an integer, got " + j.dump());
}

inline Vector vector_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array of rationals, got " + j.dump());
  Vector v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

inline const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return doc.at(key);
}

inline int int_field(const Json& doc, const char* key) {
  const Json& j = field(doc, key);
  if (!j.is_number_integer()) throw Error(ErrorKind::Parse, std::string("field '") + key + "' must be an integer");
  return j.get<int>();
}

struct FanDocument {
  FanPtr fan;
  std::vector<RaySet> listed_max_cones;  // in document order
  std::optional<Json> function;
};

inline FanDocument parse_fan(const Json& doc) {
  FanDocument out;
  const int n = int_field(doc, "dim");
  std::vector<Vector> rays;
  for (const auto& r : field(doc, "rays")) rays.push_back(vector_from(r));
  const Json& mc = field(doc, "max_cones");
  if (!mc.is_array()) throw Error(ErrorKind::Parse, "'max_cones' must be an array");
  for (const auto& c : mc) {
    RaySet s;
    if (!c.is_array()) throw Error(ErrorKind::Parse, "each maximal cone must be an array of ray indices");
    for (const auto& i : c) {
      if (!i.is_number_integer() || i.get<long long>() < 0) throw Error(ErrorKind::Parse, "bad ray index " + i.dump());
      s.push_back(i.get<std::size_t>());
    }
    out.listed_max_cones.push_back(std::move(s));
  }
  out.fan = make_fan(n, rays, out.listed_max_cones);
  if (doc.contains("function")) out.function = doc.at("function");
  return out;
}

struct PolytopeDocument {
  int dim = 0;
  std::vector<Vector> vertices;
};

inline PolytopeDocument parse_polytope(const Json& doc) {
  PolytopeDocument p;
  p.dim = int_field(doc, "dim");
  for (const auto& v : field(doc, "vertices")) p.vertices.push_back(vector_from(v));
  return p;
}

inline FaceLattice parse_lattice(const Json& doc) {
  std::map<long long, std::size_t> index;
  std::vector<int> dims;
  for (const auto& f : field(doc, "faces")) {
    const long long id = field(f, "id").get<long long>();
    if (!index.emplace(id, dims.size()).second) throw Error(ErrorKind::Parse, "duplicate face id " + std::to_string(id));
    dims.push_back(int_field(f, "dim"));
  }
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (const auto& pr : field(doc, "order")) {
    if (!pr.is_array() || pr.size() != 2) throw Error(ErrorKind::Parse, "order entries are pairs [a, b]");
    auto a = index.find(pr[0].get<long long>());
    auto b = index.find(pr[1].get<long long>());
    if (a == index.end() || b == index.end()) throw Error(ErrorKind::Parse, "order refers to an unknown face");
    order.emplace_back(a->second, b->second);
  }
  return FaceLattice(std::move(dims), order);
}

/// {"forms": [...]} in the order of the fan document's maximal cones, or
/// {"ray_values": [...]} giving the values at the primitive ray generators.
inline PiecewiseLinearFunction parse_function(const Json& doc, const FanDocument& fd) {
  if (doc.contains("ray_values")) {
    std::vector<Rational> values;
    for (const auto& x : doc.at("ray_values")) values.push_back(rational_from(x));
    if (values.size() != fd.fan->rays().size()) throw Error(ErrorKind::Parse, "one value per ray is required");
    return PiecewiseLinearFunction::from_ray_values(fd.fan, values);
  }
  const Json& forms = field(doc, "forms");
  if (forms.size() != fd.listed_max_cones.size()) {
    throw Error(ErrorKind::Parse, "one form per listed maximal cone is required");
  }
  const auto& maxc = fd.fan->maximal_cones();
  std::vector<Vector> by_id(maxc.size());
  std::vector<bool> seen(maxc.size(), false);
  for (std::size_t k = 0; k < forms.size(); ++k) {
    auto id = fd.fan->find(fd.listed_max_cones[k]);
    auto pos = std::find(maxc.begin(), maxc.end(), *id);
    if (pos == maxc.end()) throw Error(ErrorKind::Parse, "listed cone is not maximal");
    const auto slot = static_cast<std::size_t>(pos - maxc.begin());
    by_id[slot] = vector_from(forms[k]);
    seen[slot] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::Parse, "some maximal cone has no form");
  }
  return PiecewiseLinearFunction(fd.fan, std::move(by_id));
}

// ---------------------------------------------------------------------------
// Output

inline Json to_json(const Polynomial& p) {
  Json j = Json::object();
  for (const auto& [e, c] : p.terms()) j[std::to_string(e)] = c;
  return j;
}

inline Json to_json(const GradedDims& g) { return to_json(g.to_polynomial()); }

inline Json to_json(const Vector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(format_rational(x));
  return j;
}

inline Json to_json(const Decomposition& d) {
  Json j = Json::array();
  for (const auto& s : d.summands) j.push_back({{"cone", s.cone}, {"shift", s.shift}, {"mult", s.mult}});
  return j;
}

inline Json fan_to_json(const Fan& f) {
  Json rays = Json::array();
  for (const auto& r : f.rays()) rays.push_back(to_json(r));
  Json cones = Json::array();
  for (ConeId m : f.maximal_cones()) cones.push_back(f.cone(m).rays);
  return {{"dim", f.ambient_dim()}, {"rays", rays}, {"max_cones", cones}};
}

inline Json cone_json(const Fan& f, ConeId c) {
  return {{"id", c}, {"dim", f.dim(c)}, {"rays", f.cone(c).rays}};
}

/// Per-cone generator degrees of a sheaf.
inline Json generator_table(const Fan& f, const std::vector<GradedDims>& gens) {
  Json j = Json::array();
  for (ConeId c = 0; c < f.size(); ++c) {
    Json row = cone_json(f, c);
    row["generators"] = to_json(gens.at(c));
    j.push_back(std::move(row));
  }
  return j;
}

}  // namespace fanih::io
