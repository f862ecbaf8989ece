// Seeded random fans checked against closed forms and independent oracles.

#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <random>

#include "fanih/checks.hpp"
#include "fanih/corpus.hpp"
#include "fanih/decomp.hpp"
#include "fanih/ihlib.hpp"
#include "fanih/stanley.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fanih {
namespace {

constexpr int kCases = 8;

Polynomial in_q_squared(const oracle::Coeffs& c) {
  Polynomial p;
  for (std::size_t i = 0; i < c.size(); ++i) p.add(2 * static_cast<int>(i), c[i]);
  return p;
}

std::vector<Vector> to_vectors(const std::vector<oracle::Point>& pts) {
  std::vector<Vector> out;
  for (const auto& p : pts) out.push_back(Vector{Rational(p.x), Rational(p.y)});
  return out;
}

std::vector<RaySet> cyclic_sectors(std::size_t m) {
  std::vector<RaySet> cones;
  for (std::size_t i = 0; i < m; ++i) cones.push_back({i, (i + 1) % m});
  return cones;
}

struct PlanarCase {
  std::vector<oracle::Point> polygon;
  FanPtr fan;
};

PlanarCase planar_case(unsigned seed) {
  std::mt19937 rng(seed);
  auto poly = oracle::random_polygon(rng, 5, 9);
  return {poly, make_fan(2, to_vectors(poly), cyclic_sectors(poly.size()))};
}

// Prism over a polygon: vertices (p, 1) then (p, -1).
FanPtr prism_face_fan(const std::vector<oracle::Point>& poly) {
  const std::size_t m = poly.size();
  std::vector<Vector> v;
  for (long z : {1L, -1L}) {
    for (const auto& p : poly) v.push_back(Vector{Rational(p.x), Rational(p.y), Rational(z)});
  }
  std::vector<RaySet> cones;
  RaySet top, bottom;
  for (std::size_t i = 0; i < m; ++i) {
    top.push_back(i);
    bottom.push_back(m + i);
    const std::size_t j = (i + 1) % m;
    cones.push_back({i, j, m + i, m + j});
  }
  cones.push_back(top);
  cones.push_back(bottom);
  return make_fan(3, v, cones);
}

// Simplicial fan of R^3: a planar fan times the two half-lines of the z-axis.
FanPtr suspension(const std::vector<oracle::Point>& poly) {
  const std::size_t m = poly.size();
  std::vector<Vector> v;
  for (const auto& p : poly) v.push_back(Vector{Rational(p.x), Rational(p.y), Rational(0)});
  v.push_back(Vector{0, 0, 1});
  v.push_back(Vector{0, 0, -1});
  std::vector<RaySet> cones;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t pole : {m, m + 1}) cones.push_back({i, (i + 1) % m, pole});
  }
  return make_fan(3, v, cones);
}

TEST(PlanarFans, IhFollowsFVector) {
  for (unsigned seed = 1; seed <= kCases; ++seed) {
    PlanarCase c = planar_case(seed);
    const auto m = static_cast<std::int64_t>(c.polygon.size());
    EXPECT_EQ(ih(c.fan).ih, in_q_squared(oracle::h_from_f({1, m, m}))) << "seed " << seed;
  }
}

TEST(PlanarFans, GlobalSectionsCountSplines) {
  for (unsigned seed = 1; seed <= kCases; ++seed) {
    PlanarCase c = planar_case(seed);
    const auto m = static_cast<std::int64_t>(c.polygon.size());
    Sections g = sections(structure_sheaf(c.fan, 8), whole(*c.fan));
    for (int k = 0; k <= 4; ++k) {
      EXPECT_EQ(static_cast<std::int64_t>(g.module().dim(2 * k)), oracle::planar_spline_dim(m, k))
          << "seed " << seed << " k " << k;
    }
  }
}

TEST(PlanarFans, AcyclicDualAndGlobalLocal) {
  for (unsigned seed = 1; seed <= kCases; ++seed) {
    PlanarCase c = planar_case(seed);
    IHResult r = ih(c.fan);
    EXPECT_TRUE(acyclicity_report(r.sheaf()).pass()) << seed;
    EXPECT_TRUE(duality_check(r).pass()) << seed;
    EXPECT_TRUE(global_local_check(r).pass) << seed;
  }
}

TEST(PlanarFans, GaugeOfPolygonIsLefschetz) {
  for (unsigned seed = 1; seed <= kCases; ++seed) {
    PlanarCase c = planar_case(seed);
    // Value 1 at each vertex; rays are stored primitive, so divide by the
    // vertex's lattice length.
    std::vector<Rational> values;
    for (const auto& p : c.polygon) values.emplace_back(1, std::gcd(std::labs(p.x), std::labs(p.y)));
    auto l = PiecewiseLinearFunction::from_ray_values(c.fan, values);
    ASSERT_EQ(convexity(l), Convexity::StrictlyConvex) << seed;
    LefschetzReport rep = lefschetz_ranks(ih(c.fan), l);
    EXPECT_TRUE(rep.all_bijective()) << seed;
    EXPECT_TRUE(rep.steps_as_expected()) << seed;
  }
}

TEST(PlanarFans, StellarSubdivisionDecomposes) {
  // Inserting the ray p_i + p_{i+1} into sector i splits the direct image of
  // the structure sheaf as A plus one copy of L^sigma shifted by -2.
  for (unsigned seed = 1; seed <= kCases; ++seed) {
    PlanarCase c = planar_case(seed);
    const std::size_t m = c.polygon.size();
    const std::size_t i = seed % m;
    const auto& a = c.polygon[i];
    const auto& b = c.polygon[(i + 1) % m];
    auto rays = to_vectors(c.polygon);
    rays.push_back(Vector{Rational(a.x + b.x), Rational(a.y + b.y)});
    std::vector<RaySet> cones = cyclic_sectors(m);
    cones[i] = {i, m};
    cones.push_back({m, (i + 1) % m});
    FanPtr fine = make_fan(2, rays, cones);
    SubdivisionMap map = subdivision_map(fine, c.fan);
    Decomposition d = decompose(pushforward(map, structure_sheaf(fine, 6)));
    RaySet sector{i, (i + 1) % m};
    std::sort(sector.begin(), sector.end());
    ASSERT_EQ(d.summands.size(), 2u) << seed;
    EXPECT_EQ(d.mult(c.fan->origin(), 0), 1) << seed;
    EXPECT_EQ(d.mult(*c.fan->find(sector), -2), 1) << seed;
  }
}

TEST(PolygonCones, LocalInvariantsAndStanley) {
  for (unsigned seed = 1; seed <= kCases; ++seed) {
    PlanarCase c = planar_case(seed);
    const auto m = static_cast<std::int64_t>(c.polygon.size());
    FanPtr f = cone_over_polytope(2, to_vectors(c.polygon));
    const ConeId s = f->maximal_cones().front();
    const Polynomial ip_s = ip(f, s);
    EXPECT_EQ(ip_s, Polynomial::from_dense({1, m - 3}, 2)) << seed;
    EXPECT_TRUE(ip_quotient_check(f, s, ip_s).pass) << seed;
    const oracle::Coeffs h = oracle::toric_h(oracle::polygon_faces(static_cast<int>(m)));
    StanleyComparison st = compare_ih_h(2, to_vectors(c.polygon));
    EXPECT_TRUE(st.pass()) << seed;
    EXPECT_EQ(st.ih_sigma, in_q_squared(h)) << seed;
    for (ConeId t : f->faces_of(s)) EXPECT_TRUE(kalai_check(f, s, t).pass()) << seed << " tau " << t;
  }
}

TEST(PrismFans, IhMatchesProductLattice) {
  for (unsigned seed = 1; seed <= kCases / 2; ++seed) {
    PlanarCase c = planar_case(seed);
    FanPtr f = prism_face_fan(c.polygon);
    const auto poset = oracle::product(oracle::polygon_faces(static_cast<int>(c.polygon.size())), oracle::segment_faces());
    IHResult r = ih(f);
    EXPECT_EQ(r.ih, in_q_squared(oracle::toric_h(poset))) << seed;
    EXPECT_TRUE(global_local_check(r).pass) << seed;
    EXPECT_TRUE(acyclicity_report(r.sheaf()).pass()) << seed;
  }
}

TEST(PrismFans, CubeAsProductOfSegments) {
  const auto s = oracle::segment_faces();
  EXPECT_EQ(oracle::toric_h(oracle::product(oracle::product(s, s), s)), oracle::toric_h(oracle::cube_faces()));
}

TEST(Suspensions, SimplicialThreeDimensional) {
  for (unsigned seed = 1; seed <= kCases / 2; ++seed) {
    PlanarCase c = planar_case(seed);
    const auto m = static_cast<std::int64_t>(c.polygon.size());
    FanPtr f = suspension(c.polygon);
    EXPECT_TRUE(f->is_simplicial());
    EXPECT_EQ(ih(f).ih, in_q_squared(oracle::h_from_f({1, m + 2, 3 * m, 2 * m}))) << seed;
  }
}

TEST(LiftPolicy, ReverseChoiceGivesSameInvariants) {
  std::vector<FanPtr> fans;
  for (unsigned seed = 1; seed <= kCases / 2; ++seed) {
    PlanarCase c = planar_case(seed);
    fans.push_back(prism_face_fan(c.polygon));
    fans.push_back(cone_over_polytope(2, to_vectors(c.polygon)));
  }
  for (const auto& f : fans) {
    const int cap = default_cap(*f);
    MinimalSheaf a = minimal_sheaf(f, f->origin(), cap, LiftPolicy::Forward);
    MinimalSheaf b = minimal_sheaf(f, f->origin(), cap, LiftPolicy::Reverse);
    for (ConeId c = 0; c < f->size(); ++c) EXPECT_EQ(a.generators[c], b.generators[c]);
    EXPECT_TRUE(verify_minimal(b.sheaf, f->origin()).ok);
  }
}

TEST(Structure, InvariantsOnRandomFans) {
  for (unsigned seed = 1; seed <= kCases / 2; ++seed) {
    PlanarCase c = planar_case(seed);
    for (FanPtr f : {c.fan, prism_face_fan(c.polygon), suspension(c.polygon)}) {
      MinimalSheaf l = minimal_sheaf(f, f->origin());
      EXPECT_TRUE(module_structure(l.sheaf).ok) << seed;
      EXPECT_TRUE(chain_independence(l.sheaf).ok) << seed;
      EXPECT_TRUE(sections_match_stalks(l.sheaf).ok) << seed;
      EXPECT_NO_THROW(cellular_complex(l.sheaf)) << seed;
      for (ConeId cc = 0; cc < f->size(); ++cc) {
        for (const auto& [e, n] : l.generators[cc].entries()) {
          EXPECT_EQ(e % 2, 0);
          EXPECT_GE(e, 0);
          EXPECT_GT(n, 0);
        }
      }
    }
  }
}

TEST(Structure, FlabbyExactlyWhenSimplicial) {
  for (unsigned seed = 1; seed <= kCases / 2; ++seed) {
    PlanarCase c = planar_case(seed);
    for (FanPtr f : {c.fan, prism_face_fan(c.polygon), suspension(c.polygon),
                     cone_over_polytope(2, to_vectors(c.polygon))}) {
      EXPECT_EQ(is_flabby(structure_sheaf(f, default_cap(*f))).ok, f->is_simplicial()) << seed;
    }
  }
}

}  // namespace
}  // namespace fanih
