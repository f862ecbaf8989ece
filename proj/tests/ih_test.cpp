#include <gtest/gtest.h>

#include "fanih/checks.hpp"
#include "fanih/corpus.hpp"
#include "fanih/decomp.hpp"
#include "fanih/ihlib.hpp"
#include "fanih/stanley.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fanih {
namespace {

Polynomial in_q_squared(const oracle::Coeffs& c) {
  Polynomial p;
  for (std::size_t i = 0; i < c.size(); ++i) p.add(2 * static_cast<int>(i), c[i]);
  return p;
}

Polynomial dense_q2(std::initializer_list<std::int64_t> c) { return Polynomial::from_dense(c, 2); }

TEST(IH, SmallFans) {
  EXPECT_EQ(ih(corpus::line_fan()).ih, dense_q2({1, 1}));
  EXPECT_EQ(ih(corpus::quadrant_fan()).ih, dense_q2({1, 2, 1}));
  EXPECT_EQ(ih(corpus::three_ray_fan()).ih, dense_q2({1, 1, 1}));
  EXPECT_EQ(ih(corpus::subdivided_quadrant_fan()).ih, dense_q2({1, 3, 1}));
}

TEST(IH, SimplicialFansFollowFVector) {
  EXPECT_EQ(ih(corpus::orthant_fan()).ih, in_q_squared(oracle::h_from_f({1, 6, 12, 8})));
  EXPECT_EQ(ih(corpus::triangulated_cube_fan()).ih, in_q_squared(oracle::h_from_f({1, 8, 18, 12})));
}

TEST(IH, CubeMatchesSignPatternLattice) {
  EXPECT_EQ(ih(corpus::cube_face_fan()).ih, in_q_squared(oracle::toric_h(oracle::cube_faces())));
}

TEST(IH, LargerCapGivesSameAnswer) {
  FanPtr f = corpus::cube_face_fan();
  EXPECT_EQ(ih(f, 12).ih, ih(f).ih);
}

TEST(IH, TooSmallCapIsReported) {
  try {
    ih(corpus::quadrant_fan(), 2);
    FAIL() << "expected CapTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapTooSmall);
  }
}

TEST(IP, PolygonCones) {
  for (int m = 3; m <= 8; ++m) {
    FanPtr f = corpus::polygon_cone_fan(m);
    const ConeId s = f->maximal_cones().front();
    EXPECT_EQ(ip(f, s), dense_q2({1, m - 3})) << "m=" << m;
    EXPECT_EQ(ih_local(f, s), dense_q2({1, m - 2, 1})) << "m=" << m;
  }
}

TEST(IP, CubeFacetsAndRays) {
  FanPtr f = corpus::cube_face_fan();
  IHResult r = ih(f);
  for (ConeId c = 0; c < f->size(); ++c) {
    const Polynomial expected = f->dim(c) == 3 ? dense_q2({1, 1}) : Polynomial::constant(1);
    EXPECT_EQ(r.ip(c), expected) << "cone " << c;
    EXPECT_EQ(ip(f, c), expected) << "cone " << c;
  }
}

TEST(IP, QuotientIdentity) {
  FanPtr f = corpus::cube_face_fan();
  for (ConeId c : f->maximal_cones()) EXPECT_TRUE(ip_quotient_check(f, c).pass);
  EXPECT_THROW(ip_quotient_check(f, f->ray_cone(0)), Error);
}

TEST(IP, DifferenceFormulaPredictor) {
  EXPECT_EQ(ip_from_local_ih(dense_q2({1, 3, 1}), 3), dense_q2({1, 2}));
  EXPECT_EQ(ip_from_local_ih(dense_q2({1, 5, 5, 1}), 4), dense_q2({1, 4}));
}

TEST(Duality, ReversesAboutDimension) {
  EXPECT_EQ(reversed(dense_q2({1, 2}), 3), (Polynomial{{6, 1}, {4, 2}}));
  for (const auto& [name, fan] : corpus::all_fans()) {
    DualityReport d = duality_check(ih(fan));
    EXPECT_TRUE(d.pass()) << name;
    EXPECT_EQ(d.complete, fan->is_complete()) << name;
  }
}

TEST(GlobalLocal, HoldsOnCompleteFans) {
  for (const auto& [name, fan] : corpus::complete_fans()) EXPECT_TRUE(global_local_check(ih(fan)).pass) << name;
  EXPECT_THROW(global_local_check(ih(corpus::polygon_cone_fan(4))), Error);
}

TEST(Lefschetz, CubeRanks) {
  FanPtr f = corpus::cube_face_fan();
  IHResult r = ih(f);
  auto l = PiecewiseLinearFunction::from_ray_values(f, std::vector<Rational>(8, 1));
  LefschetzReport rep = lefschetz_ranks(r, l);
  ASSERT_EQ(rep.powers.size(), 2u);
  EXPECT_EQ(rep.powers[0].power, 1);
  EXPECT_EQ(rep.powers[0].rank, 5u);
  EXPECT_EQ(rep.powers[1].power, 3);
  EXPECT_EQ(rep.powers[1].rank, 1u);
  EXPECT_TRUE(rep.all_bijective());
  EXPECT_TRUE(rep.steps_as_expected());
}

TEST(Lefschetz, RequiresStrictConvexity) {
  FanPtr f = corpus::triangulated_cube_fan();
  auto l = PiecewiseLinearFunction::from_ray_values(f, std::vector<Rational>(8, 1));
  try {
    lefschetz_ranks(ih(f), l);
    FAIL() << "expected NotStrictlyConvex";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStrictlyConvex);
  }
}

TEST(Lefschetz, AddingLinearFormKeepsRanks) {
  FanPtr f = corpus::quadrant_fan();
  auto l = PiecewiseLinearFunction::from_ray_values(f, {1, 1, 1, 1});
  IHResult r = ih(f);
  auto a = lefschetz_ranks(r, l);
  auto b = lefschetz_ranks(r, l.plus_linear(Vector{3, -5}));
  ASSERT_EQ(a.powers.size(), b.powers.size());
  for (std::size_t i = 0; i < a.powers.size(); ++i) EXPECT_EQ(a.powers[i].rank, b.powers[i].rank);
}

TEST(Decompose, DiagonalSubdivisionOfStructureSheaf) {
  SubdivisionMap m = subdivision_map(corpus::subdivided_quadrant_fan(), corpus::quadrant_fan());
  Sheaf pushed = pushforward(m, structure_sheaf(m.fine, 6));
  Decomposition d = decompose(pushed);
  const ConeId sigma = *m.coarse->find({0, 1});
  ASSERT_EQ(d.summands.size(), 2u);
  EXPECT_EQ(d.mult(m.coarse->origin(), 0), 1);
  EXPECT_EQ(d.mult(sigma, -2), 1);
  EXPECT_FALSE(reconstruction_failure(pushed, d));
}

TEST(Decompose, MinimalSheafIsIndecomposable) {
  for (FanPtr f : {corpus::cube_face_fan(), corpus::polygon_cone_fan(6)}) {
    Decomposition d = decompose(minimal_sheaf(f, f->origin()).sheaf);
    ASSERT_EQ(d.summands.size(), 1u);
    EXPECT_EQ(d.summands[0].cone, f->origin());
    EXPECT_EQ(d.summands[0].shift, 0);
  }
}

TEST(Decompose, ShiftedSumSplitsBack) {
  // L^rho(-2) on the quadrant, with rho a ray, decomposes as itself.
  FanPtr f = corpus::quadrant_fan();
  const ConeId rho = f->ray_cone(2);
  Sheaf s = minimal_sheaf(f, rho, 8).sheaf.shifted(-2);
  Decomposition d = decompose(s);
  ASSERT_EQ(d.summands.size(), 1u);
  EXPECT_EQ(d.summands[0].cone, rho);
  EXPECT_EQ(d.summands[0].shift, -2);
}

TEST(Decompose, RejectsNonFlabby) {
  try {
    decompose(structure_sheaf(corpus::polygon_cone_fan(4), 8));
    FAIL() << "expected NotInCategory";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInCategory);
  }
}

TEST(Decompose, PushforwardStalkRoute) {
  SubdivisionMap m = subdivision_map(corpus::triangulated_cube_fan(), corpus::cube_face_fan());
  Sheaf l = minimal_sheaf(m.fine, m.fine->origin()).sheaf;
  for (ConeId s : m.coarse->maximal_cones()) EXPECT_TRUE(verify_pushforward_stalk(m, l, s).pass()) << s;
}

TEST(Decompose, TriangulatedCube) {
  DecompositionTheoremReport r = decomposition_theorem_report(corpus::triangulated_cube_fan(), corpus::cube_face_fan());
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.origin_multiplicity, 1);
  for (const auto& s : r.decomposition.summands) EXPECT_GE(s.mult, 0);
}

TEST(Kalai, PolygonCones) {
  for (int m = 3; m <= 8; ++m) {
    FanPtr f = corpus::polygon_cone_fan(m);
    const ConeId s = f->maximal_cones().front();
    for (ConeId t : f->faces_of(s)) {
      KalaiReport k = kalai_check(f, s, t);
      EXPECT_TRUE(k.pass()) << "m=" << m << " tau=" << t;
    }
  }
  EXPECT_THROW(kalai_check(corpus::quadrant_fan(), 5, 1), Error);
}

TEST(Stanley, SquareAndCube) {
  GHPair sq = gh_vectors(face_lattice(2, corpus::to_vectors(corpus::polygon(4))));
  EXPECT_EQ(sq.h, Polynomial::from_dense({1, 2, 1}));
  EXPECT_EQ(sq.g, Polynomial::from_dense({1, 1}));
  StanleyComparison c = compare_ih_h(3, corpus::to_vectors(corpus::cube_vertices()));
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.gh.h, Polynomial::from_dense({1, 5, 5, 1}));
  EXPECT_EQ(c.gh.g, Polynomial::from_dense({1, 4}));
}

TEST(Stanley, NonEulerianLatticeRejected) {
  // A chain of length three is not Eulerian.
  FaceLattice chain({-1, 0, 1}, {{0, 1}, {1, 2}});
  EXPECT_TRUE(chain.eulerian_failure());
  EXPECT_THROW(gh_vectors(chain), Error);
}

TEST(Suite, CubePasses) {
  FanPtr f = corpus::cube_face_fan();
  auto l = PiecewiseLinearFunction::from_ray_values(f, std::vector<Rational>(8, 1));
  SuiteReport r = run_check_suite(f, default_cap(*f), l);
  EXPECT_TRUE(r.pass());
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name;
  bool saw_lefschetz = false;
  for (const auto& fd : r.findings) {
    EXPECT_TRUE(fd.holds) << fd.name;
    saw_lefschetz = saw_lefschetz || fd.name == "lefschetz";
  }
  EXPECT_TRUE(saw_lefschetz);
}

TEST(Suite, IncompleteFanSkipsGlobalChecks) {
  FanPtr f = corpus::polygon_cone_fan(5);
  SuiteReport r = run_check_suite(f, default_cap(*f));
  EXPECT_TRUE(r.pass());
  for (const auto& c : r.checks) EXPECT_NE(c.name, "acyclicity");
}

}  // namespace
}  // namespace fanih
