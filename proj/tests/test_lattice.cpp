#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "qbraid/lattice.hpp"

using namespace qbraid;

namespace {

Lattice<3> a7_lattice() { return Lattice<3>(7, {{7, 0, 0}, {0, 7, 0}, {0, 0, 7}, {1, 2, 4}}); }

// Random element of GL(3, Z) as a product of elementary operations.
Mat<3> random_unimodular(std::mt19937& rng) {
  Mat<3> m = identity_matrix<3>();
  std::uniform_int_distribution<int> pick(0, 2), coef(-2, 2), flip(0, 1);
  for (int step = 0; step < 6; ++step) {
    const int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    Mat<3> e = identity_matrix<3>();
    e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = coef(rng);
    m = multiply<3>(e, m);
  }
  if (flip(rng)) {
    for (auto& x : m[0]) x = -x;
  }
  return m;
}

}  // namespace

TEST(Checked, OverflowThrows) {
  constexpr Int big = std::numeric_limits<Int>::max();
  EXPECT_THROW(checked::add(big, 1), OverflowError);
  EXPECT_THROW(checked::mul(big, 2), OverflowError);
  EXPECT_THROW(checked::neg(std::numeric_limits<Int>::min()), OverflowError);
  EXPECT_EQ(checked::mod(-3, 7), 4);
  EXPECT_EQ(checked::floor_div(-3, 7), -1);
  EXPECT_EQ(checked::pow(7, 3), 343);
}

TEST(Det, BareissMatchesCofactorExpansion) {
  const Basis<3> cols{{{1, 2, 4}, {2, 4, 1}, {4, 1, 2}}};
  EXPECT_EQ(det<3>(cols), -49);
  EXPECT_EQ(det<3>(Basis<3>{{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}), -1);
  EXPECT_EQ(det<3>(Basis<3>{{{1, 1, 1}, {2, 2, 2}, {0, 0, 1}}}), 0);
}

TEST(BasisOf, A7LatticeHasCovolumeOneSeventh) {
  const auto l = a7_lattice();
  EXPECT_EQ(l.basis_determinant(), 49);  // scaled by 7^3, so covolume 49/343 = 1/7
  EXPECT_EQ(l.index_in_refinement(), 7);
}

TEST(BasisOf, StandardLatticeIsIdentity) {
  const Lattice<3> z3;
  const Basis<3> expected{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  EXPECT_EQ(basis_of(z3), expected);
  EXPECT_EQ(z3.basis_determinant(), 1);
  EXPECT_EQ(z3.index_in_refinement(), 1);
}

TEST(BasisOf, JuniorRaysGenerateTheSameLattice) {
  const Lattice<3> from_rho(7, {{1, 2, 4}, {2, 4, 1}, {4, 1, 2}});
  EXPECT_EQ(from_rho, a7_lattice());
  EXPECT_EQ(basis_of(from_rho), basis_of(a7_lattice()));
}

TEST(BasisOf, IsIdempotent) {
  const auto b = basis_of(a7_lattice());
  const Lattice<3> again(7, std::vector<Vec<3>>(b.begin(), b.end()));
  EXPECT_EQ(basis_of(again), b);
}

TEST(BasisOf, CanonicalHermiteShape) {
  const auto b = basis_of(a7_lattice());
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_GT(b[j][j], 0);
    for (std::size_t i = 0; i < j; ++i) EXPECT_EQ(b[j][i], 0);
    for (std::size_t k = 0; k < j; ++k) {
      EXPECT_GE(b[k][j], 0);
      EXPECT_LT(b[k][j], b[j][j]);
    }
  }
}

TEST(BasisOf, RankDeficientThrows) {
  EXPECT_THROW(Lattice<3>(1, {{1, 0, 0}, {0, 1, 0}}), RankError);
  EXPECT_THROW(Lattice<3>(1, {{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}), RankError);
}

TEST(Lattice, MustContainIntegerLattice) { EXPECT_THROW(Lattice<3>(1, {{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), LatticeError); }

TEST(Lattice, MembershipAndPrimitivity) {
  const auto l = a7_lattice();
  EXPECT_TRUE(l.contains({1, 2, 4}));
  EXPECT_TRUE(l.contains({2, 4, 1}));
  EXPECT_FALSE(l.contains({1, 0, 0}));
  EXPECT_TRUE(l.is_primitive({7, 0, 0}));
  EXPECT_FALSE(l.is_primitive({2, 4, 8}));
  EXPECT_EQ(l.primitive({2, 4, 8}), (Vec<3>{1, 2, 4}));
}

TEST(LatticePoint, EqualityUsesReducedCoordinates) {
  EXPECT_EQ(LatticePoint<3>({2, 4, 8}, 14), LatticePoint<3>({1, 2, 4}, 7));
  EXPECT_NE(LatticePoint<3>({1, 2, 4}, 7), LatticePoint<3>({2, 4, 1}, 7));
  EXPECT_EQ(LatticePoint<3>({1, 0, 0}, 1).scaled_to(7), (Vec<3>{7, 0, 0}));
  EXPECT_THROW(LatticePoint<3>({1, 2, 4}, 7).scaled_to(3), LatticeError);
  EXPECT_THROW(LatticePoint<3>({1, 2, 4}, 0), LatticeError);
}

TEST(NormalizedVolume, CentralConeIsSmooth) {
  const std::vector<Vec<3>> g{{1, 2, 4}, {2, 4, 1}, {4, 1, 2}};
  EXPECT_EQ(normalized_volume<3>(g, a7_lattice()), 1);
}

TEST(NormalizedVolume, CoordinateConeHasVolumeSevenInL) {
  const std::vector<Vec<3>> g{{7, 0, 0}, {0, 7, 0}, {0, 0, 7}};
  EXPECT_EQ(normalized_volume<3>(g, a7_lattice()), 7);
  EXPECT_EQ(normalized_volume<3>(g, a7_lattice()), a7_lattice().index_in_refinement());
}

TEST(NormalizedVolume, UnitCubeInZ3) {
  const std::vector<Vec<3>> g{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(normalized_volume<3>(g, Lattice<3>{}), 1);
}

TEST(NormalizedVolume, LowerDimensionalThrows) {
  EXPECT_THROW(normalized_volume<3>(std::vector<Vec<3>>{{1, 0, 0}, {0, 1, 0}}, Lattice<3>{}), DimensionError);
  EXPECT_THROW(normalized_volume<3>(std::vector<Vec<3>>{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}, Lattice<3>{}), DimensionError);
}

TEST(Contains, Examples) {
  const std::vector<Vec<3>> quadrant{{1, 0, 0}, {0, 1, 0}};
  EXPECT_EQ(contains<3>(quadrant, {1, 1, 0}), Containment::interior);
  EXPECT_EQ(contains<3>(quadrant, {0, 0, 1}), Containment::outside);
  EXPECT_EQ(contains<3>(quadrant, {2, 0, 0}), Containment::boundary);
  const std::vector<Vec<3>> simplex{{7, 0, 0}, {0, 7, 0}, {0, 0, 7}};
  EXPECT_EQ(contains<3>(simplex, {1, 2, 4}), Containment::interior);
  EXPECT_EQ(contains<3>(simplex, {-1, 2, 4}), Containment::outside);
}

TEST(UnimodularToFirstAxis, SendsVectorToE0) {
  for (const Vec<3>& c : {Vec<3>{1, 2, 4}, Vec<3>{-3, 5, 7}, Vec<3>{0, 0, 1}, Vec<3>{6, 10, 15}}) {
    const auto a = unimodular_to_first_axis<3>(c);
    EXPECT_EQ(apply<3>(a, c), (Vec<3>{1, 0, 0}));
    EXPECT_EQ(checked::abs(det<3>(a)), 1);
  }
  EXPECT_THROW(unimodular_to_first_axis<3>(Vec<3>{2, 4, 6}), LatticeError);
}

TEST(LatticeProperties, VolumeInvariantUnderUnimodularChange) {
  std::mt19937 rng(12345);
  const std::vector<std::vector<Vec<3>>> cones{
      {{1, 2, 4}, {2, 4, 1}, {4, 1, 2}}, {{7, 0, 0}, {0, 7, 0}, {0, 0, 7}}, {{1, 2, 4}, {0, 0, 7}, {0, 7, 0}}};
  const auto l = a7_lattice();
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_unimodular(rng);
    ASSERT_EQ(checked::abs(det<3>(m)), 1);
    std::vector<Vec<3>> gens;
    for (const auto& g : l.generators()) gens.push_back(apply<3>(m, g));
    const Lattice<3> lm(7, gens);
    EXPECT_EQ(lm.index_in_refinement(), 7);
    for (const auto& c : cones) {
      std::vector<Vec<3>> cm;
      for (const auto& v : c) cm.push_back(apply<3>(m, v));
      EXPECT_EQ(normalized_volume<3>(cm, lm), normalized_volume<3>(c, l));
    }
  }
}
