#include <gtest/gtest.h>

#include "qbraid/fixtures.hpp"
#include "qbraid/quotient_fan.hpp"
#include "qbraid/sheaf_calculus.hpp"

using namespace qbraid;

namespace {

ConfigData a7_config() { return build_config(to_fan(a7_124_document())); }

const IntMatrix kA7Chi{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};

}  // namespace

TEST(P1Cohomology, Examples) {
  EXPECT_EQ(p1_cohomology(0), (P1Cohomology{1, 0}));
  EXPECT_EQ(p1_cohomology(-1), (P1Cohomology{0, 0}));
  EXPECT_EQ(p1_cohomology(-2), (P1Cohomology{0, 1}));
  EXPECT_EQ(p1_cohomology(3), (P1Cohomology{4, 0}));
  for (Int n = -6; n <= 6; ++n) EXPECT_EQ(p1_cohomology(n).h0 - p1_cohomology(n).h1, n + 1);
}

TEST(BuildConfig, MirrorsFanAnalysis) {
  const auto cfg = a7_config();
  ASSERT_EQ(cfg.surface_count(), 3u);
  EXPECT_TRUE(cfg.triple_point);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(cfg.surfaces[k].ray, k);
    EXPECT_EQ(cfg.surfaces[k].report.name(), "F2");
    const std::size_t next = (k + 1) % 3;
    EXPECT_EQ(cfg.self_intersection(k, next, k), -2);
    EXPECT_EQ(cfg.self_intersection(k, next, next), 0);
  }
}

TEST(GradedHom, Examples) {
  const auto cfg = a7_config();
  EXPECT_EQ(graded_hom(cfg, 0, 1), GradedDims::concentrated(1));
  EXPECT_EQ(graded_hom(cfg, 1, 0), GradedDims::concentrated(2));
  GradedDims sph;
  sph.dims = {{0, 1}, {3, 1}};
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(graded_hom(cfg, k, k), sph);
  EXPECT_THROW(graded_hom(cfg, 0, 3), IndexError);
}

TEST(GradedHom, ChainPattern) {
  const auto cfg = a7_config();
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(graded_hom(cfg, k, (k + 1) % 3), GradedDims::concentrated(1));
    EXPECT_EQ(graded_hom(cfg, (k + 1) % 3, k), GradedDims::concentrated(2));
  }
}

TEST(GradedHom, SerreDualSymmetry) {
  const auto cfg = a7_config();
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l)
      if (k != l) {
        EXPECT_EQ(graded_hom(cfg, k, l).serre_dual(), graded_hom(cfg, l, k));
      }
}

TEST(GradedHom, EmptyIntersectionIsZero) {
  auto cfg = a7_config();
  cfg.curves.erase({0, 1});
  EXPECT_TRUE(graded_hom(cfg, 0, 1).dims.empty());
}

TEST(EulerMatrix, A7Values) {
  const auto chi = euler_matrix(a7_config());
  EXPECT_EQ(chi, kA7Chi);
  EXPECT_EQ(chi(0, 1), -1);
  EXPECT_EQ(chi(1, 0), 1);
  EXPECT_EQ(chi(0, 0), 0);
  EXPECT_TRUE(is_antisymmetric_zero_diagonal(chi));
}

TEST(TwistMatrix, Examples) {
  EXPECT_EQ(twist_matrix(0, kA7Chi), (IntMatrix{{1, 1, -1}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(twist_matrix(1, kA7Chi), (IntMatrix{{1, 0, 0}, {-1, 1, 1}, {0, 0, 1}}));
  EXPECT_EQ(twist_matrix(2, kA7Chi), (IntMatrix{{1, 0, 0}, {0, 1, 0}, {1, -1, 1}}));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(twist_matrix(k, IntMatrix(3)), IntMatrix::identity(3));
  EXPECT_THROW(twist_matrix(0, IntMatrix{{1, 0}, {0, 0}}), ConfigError);
  EXPECT_THROW(twist_matrix(0, IntMatrix{{0, 1}, {1, 0}}), ConfigError);
  EXPECT_THROW(twist_matrix(5, kA7Chi), IndexError);
}

TEST(TwistMatrix, Properties) {
  const auto ts = twist_matrices(euler_matrix(a7_config()));
  EXPECT_TRUE(twist_matrix_properties(ts).all_passed());
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(ts[k].apply(unit_class(3, k)), unit_class(3, k));
}

TEST(VerifyTwistRelations, A7MatricesPass) {
  const auto ts = twist_matrices(euler_matrix(a7_config()));
  const auto rep = verify_twist_relations(ts[0], ts[1], ts[2]);
  EXPECT_TRUE(rep.all_passed());
  for (const char* name : {"braid_12", "braid_23", "braid_13", "cycle", "cycle_conjugate_form"}) EXPECT_TRUE(rep.passed(name)) << name;
  EXPECT_THROW(rep.passed("missing"), IndexError);
}

// With T3 = I the cycle relation collapses to braid_12, while T1 T3 T1 = T1^2 != T1.
TEST(VerifyTwistRelations, IdentityThirdTwistBreaksBraid13) {
  const auto ts = twist_matrices(kA7Chi);
  const auto rep = verify_twist_relations(ts[0], ts[1], IntMatrix::identity(3));
  EXPECT_TRUE(rep.passed("cycle"));
  EXPECT_FALSE(rep.passed("braid_13"));
  EXPECT_FALSE(rep.passed("braid_23"));
}

TEST(VerifyTwistRelations, AllIdentityPasses) {
  const auto id = IntMatrix::identity(3);
  EXPECT_TRUE(verify_twist_relations(id, id, id).all_passed());
}

TEST(VerifyTwistRelations, PerturbedChiFailsCycle) {
  const IntMatrix perturbed{{0, -1, -1}, {1, 0, -1}, {1, 1, 0}};
  const auto ts = twist_matrices(perturbed);
  EXPECT_FALSE(verify_twist_relations(ts[0], ts[1], ts[2]).passed("cycle"));
}

TEST(TwistedClassChecks, A7Values) {
  const auto cfg = a7_config();
  const auto rep = twisted_class_checks(cfg, euler_matrix(cfg));
  EXPECT_TRUE(rep.checks.all_passed());
  EXPECT_EQ(rep.t1_e2, (std::vector<Int>{1, 1, 0}));
  EXPECT_EQ(rep.chi_e3_t1_e2, 0);
  EXPECT_EQ(rep.t2_inv_e1, (std::vector<Int>{1, 1, 0}));
  EXPECT_EQ(rep.chi_e1_t2_e3, 0);
}

TEST(NodalChainCohomology, Examples) {
  EXPECT_EQ(nodal_chain_cohomology({0, -1}, {{0, 1}}), (P1Cohomology{0, 0}));
  EXPECT_EQ(nodal_chain_cohomology({0, 0}, {{0, 1}}), (P1Cohomology{1, 0}));
  EXPECT_EQ(nodal_chain_cohomology({-2, -2}, {{0, 1}}), (P1Cohomology{0, 3}));
  EXPECT_EQ(nodal_chain_cohomology({0, 1}, {{0, 1}}), (P1Cohomology{2, 0}));
  EXPECT_EQ(nodal_chain_cohomology({1, 1, 1}, {{0, 1}, {1, 2}}), (P1Cohomology{4, 0}));
  EXPECT_EQ(nodal_chain_cohomology({3}, {}), (P1Cohomology{4, 0}));
}

TEST(NodalChainCohomology, EulerCharacteristicFormula) {
  for (Int a = -3; a <= 3; ++a)
    for (Int b = -3; b <= 3; ++b) {
      const auto h = nodal_chain_cohomology({a, b}, {{0, 1}});
      EXPECT_EQ(h.h0 - h.h1, a + b + 2 - 1);
      EXPECT_GE(h.h1, 0);
    }
}

TEST(NodalChainCohomology, CycleThrows) {
  EXPECT_THROW(nodal_chain_cohomology({0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}}), UnsupportedError);
  EXPECT_THROW(nodal_chain_cohomology({0, 0}, {{0, 0}}), IndexError);
}

TEST(Orthogonality, A7Config) {
  const auto rep = orthogonality_check(a7_config());
  EXPECT_TRUE(rep.applicable);
  EXPECT_EQ(rep.degree_on_c13, 0);
  EXPECT_EQ(rep.degree_on_c23, -1);
  EXPECT_EQ(rep.cohomology, (P1Cohomology{0, 0}));
  EXPECT_TRUE(rep.orthogonal);
}

TEST(Orthogonality, PerturbedConfigFails) {
  auto cfg = a7_config();
  cfg.set_self_intersection(1, 2, 1, 0);
  const auto rep = orthogonality_check(cfg);
  EXPECT_EQ(rep.degree_on_c13, 0);
  EXPECT_EQ(rep.degree_on_c23, 1);
  EXPECT_EQ(rep.cohomology, (P1Cohomology{2, 0}));
  EXPECT_FALSE(rep.orthogonal);
}

TEST(Orthogonality, WithoutThirdSurfaceIsVacuous) {
  auto cfg = a7_config();
  cfg.surfaces.pop_back();
  cfg.curves.erase({0, 2});
  cfg.curves.erase({1, 2});
  cfg.triple_point = false;
  const auto rep = orthogonality_check(cfg);
  EXPECT_FALSE(rep.applicable);
  EXPECT_TRUE(rep.orthogonal);
}

TEST(Orthogonality, MissingCurveIsConfigError) {
  auto cfg = a7_config();
  cfg.curves.erase({0, 2});
  EXPECT_THROW(orthogonality_check(cfg), ConfigError);
}

TEST(EndToEnd, OneOverThreeHasSingleSphericalSurface) {
  const QuotientData q(3, {1, 1, 1});
  const auto cfg = build_config(resolution_fan(enumerate_unimodular_triangulations(q)[0], build_lattice(q)));
  ASSERT_EQ(cfg.surface_count(), 1u);
  EXPECT_EQ(euler_matrix(cfg), IntMatrix(1));
  EXPECT_EQ(twist_matrix(0, euler_matrix(cfg)), IntMatrix::identity(1));
}

TEST(IntMatrixOps, InverseAndDeterminant) {
  const IntMatrix t{{1, 1, -1}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(t.determinant(), 1);
  EXPECT_EQ(t * t.inverse(), IntMatrix::identity(3));
  EXPECT_EQ(IntMatrix({{0, 1}, {1, 0}}).determinant(), -1);
  EXPECT_THROW(IntMatrix({{2, 0}, {0, 1}}).inverse(), DimensionError);
  EXPECT_EQ(t.transpose().transpose(), t);
}
