#include <gtest/gtest.h>

#include "fanih/cellular.hpp"
#include "fanih/corpus.hpp"
#include "fanih/graded.hpp"
#include "fanih/minimal.hpp"
#include "fanih/sheaf.hpp"
#include "support.hpp"

namespace fanih {
namespace {

// (1 - q^2)^-k truncated at cap, times p.
Polynomial series(const Polynomial& p, unsigned k, int cap) { return (p * inverse_power_series(k, cap)).truncated(cap); }

TEST(Graded, FreeModuleHilbert) {
  FreeModule m = FreeModule::on_span({Vector{1, 0}, Vector{0, 1}}, 2, {0, 2}, 0, 8);
  EXPECT_EQ(m.module().hilbert(), series(Polynomial{{0, 1}, {2, 1}}, 2, 8));
  EXPECT_TRUE(m.module().commutativity_failure() == std::nullopt);
  FreenessReport r = check_free(m.module(), coordinate_forms(2));
  EXPECT_TRUE(r.free);
  EXPECT_EQ(r.generators, (GradedDims{{0, 1}, {2, 1}}));
}

TEST(Graded, TorsionModuleIsNotFree) {
  // Q[x] / (x): one dimension in degree 0, nothing above.
  GradedModule m(1, 0, 8);
  m.set_dim(0, 1);
  for (int d = 0; d + 2 <= 8; d += 2) m.set_act(0, d, Matrix(m.dim(d + 2), m.dim(d)));
  FreenessReport r = check_free(m, coordinate_forms(1));
  EXPECT_FALSE(r.free);
  ASSERT_TRUE(r.failing_degree);
  EXPECT_EQ(*r.failing_degree, 2);
}

TEST(Graded, GeneratorsNearCapRaise) {
  GradedModule m(1, 0, 4);
  m.set_dim(4, 1);
  try {
    check_free(m, coordinate_forms(1));
    FAIL() << "expected CapTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapTooSmall);
  }
}

TEST(Sheaf, StructureSheafStalks) {
  FanPtr f = corpus::quadrant_fan();
  Sheaf a = structure_sheaf(f, 6);
  const ConeId s = *f->find({0, 1});
  EXPECT_EQ(a.stalk(s).hilbert(), series(Polynomial::constant(1), 2, 6));
  EXPECT_EQ(a.stalk(f->ray_cone(0)).hilbert(), series(Polynomial::constant(1), 1, 6));
  EXPECT_EQ(a.stalk(f->origin()).hilbert(), Polynomial::constant(1));
  EXPECT_TRUE(is_flabby(a).ok);
  EXPECT_TRUE(is_locally_free(a).free);
}

TEST(Sheaf, CapValidation) {
  FanPtr f = corpus::line_fan();
  EXPECT_THROW(structure_sheaf(f, 3), Error);
  EXPECT_THROW(structure_sheaf(f, 0), Error);
  EXPECT_NO_THROW(structure_sheaf(f, 2));
}

TEST(Sheaf, GlobalSectionsOfQuadrantMatchSplineCount) {
  FanPtr f = corpus::quadrant_fan();
  Sheaf a = structure_sheaf(f, 8);
  Sections g = sections(a, whole(*f));
  EXPECT_EQ(g.module().hilbert(), series(Polynomial::from_dense({1, 2, 1}, 2), 2, 8));
}

TEST(Sheaf, NonSimplicialStructureSheafIsNotFlabby) {
  FanPtr f = corpus::polygon_cone_fan(4);
  CheckResult r = is_flabby(structure_sheaf(f, 8));
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->cone, f->maximal_cones().front());
}

TEST(Sheaf, InvariantsHoldOnCorpus) {
  for (const auto& [name, fan] : corpus::all_fans()) {
    Sheaf a = structure_sheaf(fan, default_cap(*fan));
    EXPECT_TRUE(module_structure(a).ok) << name;
    EXPECT_TRUE(chain_independence(a).ok) << name;
    EXPECT_TRUE(sections_match_stalks(a).ok) << name;
  }
}

TEST(Sheaf, BrokenRestrictionIsDetected) {
  FanPtr f = corpus::quadrant_fan();
  Sheaf a = structure_sheaf(f, 6);
  // Forget one restriction from a 2-cone to a ray.
  std::size_t victim = 0;
  while (f->dim(f->covers()[victim].cone) != 2) ++victim;
  a.clear_restriction(victim);
  EXPECT_FALSE(chain_independence(a).ok);
  EXPECT_THROW(
      {
        try {
          cellular_complex(a);
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::SignInconsistency);
          throw;
        }
      },
      Error);
}

TEST(Cellular, EulerCharacteristicMatchesCohomology) {
  for (const auto& [name, fan] : corpus::all_fans()) {
    CellComplex c = cellular_complex(structure_sheaf(fan, default_cap(*fan)));
    EXPECT_EQ(euler_characteristic(c), euler_characteristic(complex_cohomology(c))) << name;
  }
}

TEST(Cellular, FlabbySheafOnConeHasOnlyLowestCohomology) {
  // A flabby sheaf on [sigma] is acyclic except in degree n - d(sigma).
  for (int m = 3; m <= 8; ++m) {
    FanPtr f = corpus::polygon_cone_fan(m);
    MinimalSheaf l = minimal_sheaf(f, f->origin());
    Cohomology h = complex_cohomology(cellular_complex(l.sheaf));
    for (const auto& [i, g] : h.groups) {
      if (i != 0) {
        EXPECT_TRUE(g.is_zero()) << "m=" << m << " i=" << i;
      }
    }
  }
  // Lower-dimensional cone in R^2: the ray cone of the line fan as a subfan.
  FanPtr q = corpus::quadrant_fan();
  Sheaf a = structure_sheaf(q, 6);
  Subposet ray = generated(*q, {q->ray_cone(0)});
  Cohomology h = complex_cohomology(cellular_complex(a, ray));
  EXPECT_TRUE(h.at(0).is_zero());
  EXPECT_FALSE(h.at(1).is_zero());
}

TEST(Cellular, AcyclicityRejectsOutsideCategory) {
  FanPtr q = corpus::quadrant_fan();
  Sheaf a = structure_sheaf(q, 6);
  EXPECT_TRUE(acyclicity_report(a).pass());
  try {
    acyclicity_report(structure_sheaf(corpus::polygon_cone_fan(4), 8));
    FAIL() << "expected NotInCategory";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInCategory);
  }
}

TEST(Minimal, SimplicialMinimalSheafIsStructureSheaf) {
  for (FanPtr f : {corpus::quadrant_fan(), corpus::orthant_fan(), corpus::triangulated_cube_fan()}) {
    MinimalSheaf l = minimal_sheaf(f, f->origin());
    Sheaf a = structure_sheaf(f, default_cap(*f));
    for (ConeId c = 0; c < f->size(); ++c) {
      EXPECT_EQ(l.generators[c], (GradedDims{{0, 1}}));
      EXPECT_EQ(l.sheaf.stalk(c).hilbert(), a.stalk(c).hilbert());
    }
  }
}

TEST(Minimal, BasedAtRay) {
  FanPtr f = corpus::quadrant_fan();
  const ConeId rho = f->ray_cone(0);
  MinimalSheaf l = minimal_sheaf(f, rho, 6);
  EXPECT_TRUE(verify_minimal(l.sheaf, rho).ok);
  EXPECT_EQ(l.sheaf.support().size(), 3u);
  EXPECT_EQ(l.generators[rho], (GradedDims{{0, 1}}));
  // Not minimal for the origin: the stalk there vanishes.
  EXPECT_FALSE(verify_minimal(l.sheaf, f->origin()).ok);
}

TEST(Minimal, ConeOverSquare) {
  FanPtr f = corpus::polygon_cone_fan(4);
  MinimalSheaf l = minimal_sheaf(f, f->origin());
  EXPECT_EQ(l.generators[f->maximal_cones().front()], (GradedDims{{0, 1}, {2, 1}}));
  EXPECT_TRUE(verify_minimal(l.sheaf, f->origin()).ok);
}

TEST(Minimal, CostalkOfSimplicialConeIsTopMonomial) {
  FanPtr f = corpus::quadrant_fan();
  Sheaf a = structure_sheaf(f, 8);
  const ConeId s = *f->find({0, 1});
  GradedModule k = costalk(a, s);
  // Functions vanishing on both rays: x y Q[x, y].
  EXPECT_EQ(minimal_generators(k).dims, (GradedDims{{4, 1}}));
}

TEST(Minimal, ZeroOutsideAndStarRestriction) {
  FanPtr f = corpus::quadrant_fan();
  Sheaf a = structure_sheaf(f, 6);
  Sheaf s = star_restriction(a, f->ray_cone(1));
  EXPECT_EQ(s.support().size(), 3u);
  EXPECT_TRUE(s.stalk(f->origin()).is_zero());
}

}  // namespace
}  // namespace fanih
