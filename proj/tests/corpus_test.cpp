// The JSON files under corpus/ describe the same fans as corpus.hpp.

#include <gtest/gtest.h>

#include <algorithm>

#include "fanih/corpus.hpp"
#include "fanih/io.hpp"
#include "support.hpp"

namespace fanih {
namespace {

std::string path(const std::string& name) { return std::string(FANIH_CORPUS_DIR) + "/" + name + ".json"; }

std::vector<RaySet> sorted_max_cones(const Fan& f) {
  std::vector<RaySet> out;
  for (ConeId m : f.maximal_cones()) out.push_back(f.cone(m).rays);
  std::sort(out.begin(), out.end());
  return out;
}

void expect_same_fan(const Fan& a, const Fan& b, const std::string& name) {
  EXPECT_EQ(a.ambient_dim(), b.ambient_dim()) << name;
  EXPECT_EQ(a.rays(), b.rays()) << name;
  EXPECT_EQ(sorted_max_cones(a), sorted_max_cones(b)) << name;
}

TEST(Corpus, FanFilesMatchBuiltins) {
  for (const auto& [name, fan] : corpus::complete_fans()) {
    io::FanDocument fd = io::parse_fan(io::load_json(path(name)));
    expect_same_fan(*fd.fan, *fan, name);
  }
}

TEST(Corpus, PolygonFilesMatchBuiltins) {
  for (int m = 3; m <= 8; ++m) {
    io::PolytopeDocument p = io::parse_polytope(io::load_json(path("polygon_" + std::to_string(m))));
    EXPECT_EQ(p.dim, 2);
    EXPECT_EQ(p.vertices, corpus::to_vectors(corpus::polygon(m))) << m;
    expect_same_fan(*cone_over_polytope(p.dim, p.vertices), *corpus::polygon_cone_fan(m), "polygon");
  }
  io::PolytopeDocument cube = io::parse_polytope(io::load_json(path("cube")));
  EXPECT_EQ(cube.vertices, corpus::to_vectors(corpus::cube_vertices()));
}

TEST(Corpus, EmbeddedFunctionsAreStrictlyConvex) {
  for (const char* name : {"line", "quadrant", "three_ray", "orthant", "cube_face_fan", "prism_face_fan",
                           "polygon_face_fan_5", "polygon_face_fan_8"}) {
    io::FanDocument fd = io::parse_fan(io::load_json(path(name)));
    ASSERT_TRUE(fd.function) << name;
    EXPECT_EQ(convexity(io::parse_function(*fd.function, fd)), Convexity::StrictlyConvex) << name;
  }
  io::FanDocument q = io::parse_fan(io::load_json(path("quadrant")));
  auto slope = io::parse_function(io::load_json(path("quadrant_slope")), q);
  auto gauge = io::parse_function(*q.function, q);
  EXPECT_EQ(slope.forms(), gauge.forms());
}

TEST(Corpus, BrokenFanIsRejected) {
  try {
    io::parse_fan(io::load_json(path("broken_fan")));
    FAIL() << "expected NotAFan";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAFan);
  }
}

TEST(Corpus, SquareLattice) {
  GHPair gh = gh_vectors(io::parse_lattice(io::load_json(path("square_lattice"))));
  EXPECT_EQ(gh.h, Polynomial::from_dense({1, 2, 1}));
}

}  // namespace
}  // namespace fanih
