#include <gtest/gtest.h>

#include <algorithm>

#include "qbraid/fan_analysis.hpp"
#include "qbraid/fixtures.hpp"
#include "qbraid/quotient_fan.hpp"

using namespace qbraid;

namespace {

// Rays rho1..rho6 in fixture order (indices 0..5).
Fan<3> a7_fan() { return to_fan(a7_124_document()); }

Fan<3> one_over_three() {
  const QuotientData q(3, {1, 1, 1});
  return resolution_fan(enumerate_unimodular_triangulations(q)[0], build_lattice(q));
}

// Sigma-bar: F2 with rays v2..v5 = (0,-1), (1,0), (0,1), (-1,-2).
Fan<2> sigma_bar() { return complete_fan_2d({{0, -1}, {1, 0}, {0, 1}, {-1, -2}}); }

Int self_int_of_source(const StarFan2D& star, std::size_t source) {
  return curve_self_intersection(star, star.position_of_source(source));
}

}  // namespace

TEST(OrbitDim, Examples) {
  const auto fan = a7_fan();
  EXPECT_EQ(orbit_dim(fan, fan.make_cone({0})), 2u);
  EXPECT_EQ(orbit_dim(fan, fan.make_cone({0, 1, 2})), 0u);
  EXPECT_EQ(orbit_dim(fan, fan.make_cone({0, 1})), 1u);
  EXPECT_THROW(orbit_dim(fan, fan.make_cone({3, 4, 5})), NotInFanError);
  EXPECT_THROW(orbit_dim(fan, fan.make_cone({0, 5})), NotInFanError);
}

TEST(StarFan, RhoOneIsHirzebruchTwo) {
  const auto fan = a7_fan();
  const auto star = star_fan(fan, 0);
  EXPECT_EQ(star.size(), 4u);
  EXPECT_TRUE(star.is_smooth());
  const auto rep = classify_surface(star);
  EXPECT_EQ(rep.kind, SurfaceKind::hirzebruch);
  EXPECT_EQ(rep.hirzebruch_e, 2);
  EXPECT_EQ(rep.name(), "F2");
  // Cycle (0,-2,0,2) up to rotation.
  auto c = rep.self_intersection_cycle;
  std::sort(c.begin(), c.end());
  EXPECT_EQ(c, (std::vector<Int>{-2, 0, 0, 2}));
}

TEST(StarFan, SymmetricForAllJuniorRays) {
  const auto fan = a7_fan();
  const auto r0 = classify_surface(star_fan(fan, 0));
  for (std::size_t k = 1; k < 3; ++k) {
    const auto rk = classify_surface(star_fan(fan, k));
    EXPECT_EQ(rk.kind, r0.kind);
    EXPECT_EQ(rk.hirzebruch_e, r0.hirzebruch_e);
    auto cycle = rk.self_intersection_cycle;
    bool rotation = false;
    for (std::size_t s = 0; s < cycle.size() && !rotation; ++s) {
      rotation = cycle == r0.self_intersection_cycle;
      std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
    }
    EXPECT_TRUE(rotation);
  }
}

TEST(StarFan, OneOverThreeIsProjectivePlane) {
  const auto fan = one_over_three();
  const auto star = star_fan(fan, 0);
  EXPECT_EQ(star.size(), 3u);
  const auto rep = classify_surface(star);
  EXPECT_EQ(rep.kind, SurfaceKind::projective_plane);
  EXPECT_EQ(rep.self_intersection_cycle, (std::vector<Int>{1, 1, 1}));
}

TEST(StarFan, BoundaryRayThrows) {
  const auto fan = a7_fan();
  EXPECT_THROW(star_fan(fan, 3), NotCompactError);
  EXPECT_THROW(star_fan(fan, 99), NotInFanError);
}

TEST(CurveSelfIntersection, HirzebruchAndP2) {
  const auto f2 = cyclic_form(hirzebruch_fan(2));
  EXPECT_EQ(self_int_of_source(f2, 1), -2);  // v2 = (0,-1)
  EXPECT_EQ(self_int_of_source(f2, 0), 0);   // v1 = (1,0)
  EXPECT_EQ(self_int_of_source(f2, 2), 0);
  EXPECT_EQ(self_int_of_source(f2, 3), 2);
  const auto p2 = cyclic_form(projective_plane_fan());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(curve_self_intersection(p2, i), 1);
}

TEST(CurveSelfIntersection, NonSmoothThrows) {
  const auto singular = cyclic_form(complete_fan_2d({{1, 0}, {1, 2}, {-1, 0}, {0, -1}}));
  EXPECT_THROW(curve_self_intersection(singular, 0), SmoothnessError);
  EXPECT_THROW(curve_self_intersection(singular, 9), IndexError);
}

TEST(ClassifySurface, Examples) {
  EXPECT_EQ(classify_surface(cyclic_form(projective_plane_fan())).kind, SurfaceKind::projective_plane);
  const auto f1 = classify_surface(cyclic_form(hirzebruch_fan(1)));
  EXPECT_EQ(f1.kind, SurfaceKind::hirzebruch);
  EXPECT_EQ(f1.hirzebruch_e, 1);
  const auto f0 = classify_surface(cyclic_form(hirzebruch_fan(0)));
  EXPECT_EQ(f0.kind, SurfaceKind::hirzebruch);
  EXPECT_EQ(f0.hirzebruch_e, 0);
  EXPECT_EQ(f0.name(), "F0");
  // Blow-up of P^2 at two points: 5 rays, not P^2 or F_e.
  const auto other = classify_surface(cyclic_form(complete_fan_2d({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}})));
  EXPECT_EQ(other.kind, SurfaceKind::other);
  EXPECT_EQ(other.self_intersection_cycle.size(), 5u);
  const auto capped = classify_surface(cyclic_form(hirzebruch_fan(2)), 3);
  EXPECT_EQ(capped.kind, SurfaceKind::other);
  EXPECT_EQ(capped.self_intersection_cycle.size(), 4u);
}

TEST(ClassifySurface, RoleTableOfRhoOne) {
  const auto fan = a7_fan();
  const auto rep = classify_surface(star_fan(fan, 0));
  EXPECT_EQ(rep.role_table.at(1).role, CurveRole::section);
  EXPECT_EQ(rep.role_table.at(1).self_intersection, -2);
  EXPECT_EQ(rep.role_table.at(2).role, CurveRole::fibre);
  EXPECT_EQ(rep.role_table.at(2).self_intersection, 0);
}

TEST(ClassifySurface, CyclicRolePattern) {
  const auto fan = a7_fan();
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t next = (k + 1) % 3;
    EXPECT_EQ(classify_surface(star_fan(fan, k)).role_table.at(next).role, CurveRole::section);
    EXPECT_EQ(classify_surface(star_fan(fan, next)).role_table.at(k).role, CurveRole::fibre);
  }
}

TEST(IntersectionCurve, Examples) {
  const auto fan = a7_fan();
  const auto c12 = intersection_curve(fan, 0, 1);
  EXPECT_EQ(c12.orbit_dimension, 1u);
  ASSERT_TRUE(c12.in_first && c12.in_second);
  EXPECT_EQ(c12.in_first->self_intersection, -2);
  EXPECT_EQ(c12.in_first->role, CurveRole::section);
  EXPECT_EQ(c12.in_second->self_intersection, 0);
  EXPECT_EQ(c12.in_second->role, CurveRole::fibre);
  const auto c23 = intersection_curve(fan, 1, 2);
  EXPECT_EQ(c23.in_first->self_intersection, -2);
  EXPECT_EQ(c23.in_second->self_intersection, 0);
  const auto c16 = intersection_curve(fan, 0, 3);  // rho1 with the boundary ray rho4
  EXPECT_TRUE(c16.in_first.has_value());
  EXPECT_FALSE(c16.in_second.has_value());
  EXPECT_THROW(intersection_curve(fan, 0, 5), EmptyIntersection);
  EXPECT_THROW(intersection_curve(fan, 0, 0), IndexError);
}

TEST(LineBundleFan, A7Example) {
  const auto fan = line_bundle_fan(sigma_bar(), DivisorSpec::uniform(4, -1));
  const std::vector<Vec<3>> expected{{0, 0, 1}, {0, -1, 1}, {1, 0, 1}, {0, 1, 1}, {-1, -2, 1}};
  EXPECT_EQ(fan.rays, expected);
  EXPECT_EQ(fan.maximal_cones.size(), 4u);
  const auto& r = fan.rays;
  EXPECT_EQ(r[3], 2 * r[0] - r[1]);
  EXPECT_EQ(r[4], 2 * r[1] - r[2]);
}

TEST(LineBundleFan, ZeroDivisorIsProduct) {
  const auto base = hirzebruch_fan(3);
  const auto fan = line_bundle_fan(base, DivisorSpec{});
  EXPECT_EQ(fan.rays[0], (Vec<3>{0, 0, 1}));
  for (std::size_t i = 0; i < base.rays.size(); ++i) EXPECT_EQ(fan.rays[i + 1], (Vec<3>{base.rays[i][0], base.rays[i][1], 0}));
  // Projection away from the last coordinate maps cones onto base cones.
  for (std::size_t c = 0; c < base.maximal_cones.size(); ++c) {
    std::vector<std::size_t> projected;
    for (auto i : fan.maximal_cones[c].ray_indices)
      if (i != 0) projected.push_back(i - 1);
    EXPECT_EQ(projected, base.maximal_cones[c].ray_indices);
  }
}

TEST(FanIsomorphism, SubfanAtRhoOneMatchesTotalSpace) {
  const auto sub = a7_fan().star_closed_subfan(0);
  const auto total = line_bundle_fan(sigma_bar(), DivisorSpec::uniform(4, -1));
  ASSERT_EQ(sub.rays.size(), 5u);
  const auto iso = fan_isomorphism(sub, total);
  ASSERT_TRUE(iso.has_value());
  EXPECT_EQ(iso->ray_map, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(checked::abs(det<3>(iso->matrix)), 1);
}

TEST(FanIsomorphism, IdentityAndNone) {
  const auto fan = a7_fan();
  const auto self = fan_isomorphism(fan, fan);
  ASSERT_TRUE(self.has_value());
  EXPECT_EQ(self->ray_map, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(self->matrix, identity_matrix<3>());
  EXPECT_FALSE(fan_isomorphism(projective_plane_fan(), hirzebruch_fan(1)).has_value());
  EXPECT_FALSE(fan_isomorphism(hirzebruch_fan(1), hirzebruch_fan(2)).has_value());
  EXPECT_TRUE(fan_isomorphism(hirzebruch_fan(2), sigma_bar()).has_value());
}

TEST(FanIsomorphism, ZeroSectionStarIsBase) {
  for (Int e : {0, 1, 2, 3}) {
    const auto base = hirzebruch_fan(e);
    for (Int a : {-1, 0, 2}) {
      const auto total = line_bundle_fan(base, DivisorSpec::uniform(4, a));
      const auto star = star_fan(total, 0);
      const auto rep = classify_surface(star);
      EXPECT_EQ(rep.kind, SurfaceKind::hirzebruch);
      EXPECT_EQ(rep.hirzebruch_e, e);
      EXPECT_TRUE(fan_isomorphism(star.to_fan(), base).has_value());
    }
  }
  const auto total = line_bundle_fan(sigma_bar(), DivisorSpec::uniform(4, -1));
  EXPECT_EQ(classify_surface(star_fan(total, 0)).name(), "F2");
}
