#include "isowrist/isotropy_solver.hpp"
#include "isowrist/wrist_kinematics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace isowrist;

namespace {

constexpr double kPi = std::numbers::pi;

UnitVec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  return UnitVec3::normalized(Vec3(nd(rng), nd(rng), nd(rng)));
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  return Eigen::AngleAxisd(angle(rng), random_unit(rng).vec()).toRotationMatrix();
}

PointSet orthogonal_triad() { return {UnitVec3(1, 0, 0), UnitVec3(0, 1, 0), UnitVec3(0, 0, 1)}; }

DHChain chain(std::vector<double> twists, std::vector<std::optional<double>> joints) {
  return {std::move(twists), std::move(joints)};
}

}  // namespace

TEST(JacobianFromAxes, TriadIsIdentity) {
  EXPECT_EQ(jacobian_from_axes(orthogonal_triad()).matrix(), Mat3::Identity());
}

TEST(JacobianFromAxes, TetrahedronColumns) {
  const auto j = jacobian_from_axes(reference_tetrahedron());
  ASSERT_EQ(j.joint_count(), 4u);
  EXPECT_EQ(Vec3(j.matrix().col(0)), Vec3(1, 0, 0));
}

TEST(JacobianFromAxes, SingleAxisAndEmpty) {
  const auto j = jacobian_from_axes(PointSet{UnitVec3(0, 1, 0)});
  ASSERT_EQ(j.joint_count(), 1u);
  EXPECT_EQ(Vec3(j.matrix().col(0)), Vec3(0, 1, 0));
  EXPECT_THROW(jacobian_from_axes(PointSet{}), std::invalid_argument);
}

TEST(AngularVelocity, Examples) {
  const auto triad = jacobian_from_axes(orthogonal_triad());
  const std::vector<double> rates = {1, 2, 3};
  EXPECT_EQ(angular_velocity(triad, rates), Vec3(1, 2, 3));

  const auto tet = jacobian_from_axes(reference_tetrahedron());
  const std::vector<double> zero(4, 0.0), ones(4, 1.0);
  EXPECT_EQ(angular_velocity(tet, zero), Vec3::Zero());
  // Column sum: (1 - 3/3, -2r2/3 + 2 r2/3, r6/3 - r6/3) = 0.
  EXPECT_LE(angular_velocity(tet, ones).cwiseAbs().maxCoeff(), 1e-15);

  EXPECT_THROW(angular_velocity(tet, rates), std::invalid_argument);
}

TEST(IsotropyReport, Tetrahedron) {
  const auto r = isotropy_report(jacobian_from_axes(reference_tetrahedron()));
  EXPECT_TRUE(r.is_isotropic);
  EXPECT_NEAR(r.sigma, std::sqrt(4.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.sigma, 1.15470, 1e-5);
  for (double s : r.singular_values) EXPECT_NEAR(s, std::sqrt(4.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.condition_number, 1.0, 1e-12);
}

TEST(IsotropyReport, OrthogonalTriad) {
  const auto r = isotropy_report(jacobian_from_axes(orthogonal_triad()));
  EXPECT_TRUE(r.is_isotropic);
  EXPECT_NEAR(r.sigma, 1.0, 1e-15);
  EXPECT_NEAR(r.condition_number, 1.0, 1e-15);
}

TEST(IsotropyReport, CoplanarAxesAreSingular) {
  const double a = 2 * kPi / 3;
  const PointSet coplanar{UnitVec3(1, 0, 0), UnitVec3(std::cos(a), std::sin(a), 0),
                          UnitVec3(std::cos(2 * a), std::sin(2 * a), 0)};
  const auto r = isotropy_report(jacobian_from_axes(coplanar));
  EXPECT_FALSE(r.is_isotropic);
  EXPECT_TRUE(std::isinf(r.condition_number));
  EXPECT_NEAR(r.singular_values[2], 0.0, 1e-15);
}

TEST(IsotropyReport, TraceIdentityAndConditionBound) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 7;
    std::vector<UnitVec3> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_unit(rng));
    const auto r = isotropy_report(jacobian_from_axes(PointSet(pts)));
    double sq = 0;
    for (double s : r.singular_values) sq += s * s;
    EXPECT_NEAR(sq, n, 1e-12);
    EXPECT_GE(r.condition_number, 1.0);
    EXPECT_GE(r.singular_values[0], r.singular_values[1]);
    EXPECT_GE(r.singular_values[1], r.singular_values[2]);
  }
}

TEST(IsotropyReport, AgreesWithSecondMomentTest) {
  // Half of the sets are rotated, partially flipped copies of isotropic
  // sets, so both verdicts are exercised.
  std::mt19937_64 rng(29);
  int isotropic_seen = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    PointSet s;
    if (trial % 2 == 0) {
      const auto kind = kAllPlatonicSolids[static_cast<std::size_t>(trial / 2) % 5];
      const PointSet base = kind == PlatonicSolid::tetrahedron && trial % 4 == 0
                                ? axes_of(solve_closed_form(SignPattern::from_index(rng() % 32)).values)
                                : platonic_vertices(kind);
      std::vector<std::size_t> subset;
      for (std::size_t k = 1; k <= base.size(); ++k)
        if (rng() & 1U) subset.push_back(k);
      s = transform(antipodal_exchange(base, subset), random_rotation(rng));
    } else {
      std::vector<UnitVec3> pts;
      for (int i = 0; i < 3 + trial % 6; ++i) pts.push_back(random_unit(rng));
      s = PointSet(pts);
    }
    const bool by_jacobian = isotropy_report(jacobian_from_axes(s)).is_isotropic;
    const bool by_moment = isotropy_of(second_moment(s)).isotropic;
    EXPECT_EQ(by_jacobian, by_moment) << "trial " << trial;
    isotropic_seen += by_moment;
  }
  EXPECT_EQ(isotropic_seen, 500);
}

TEST(ForwardAxes, TwistFixesConsecutiveDotProduct) {
  const auto dh = chain({std::acos(-1.0 / 3)}, {std::nullopt, std::nullopt});
  for (double t1 : {0.0, 0.3, 2.0, -1.2}) {
    const PointSet axes = forward_axes(dh, {t1, 0.0});
    EXPECT_NEAR(axes[0].dot(axes[1]), -1.0 / 3, 1e-15);
    EXPECT_EQ(axes[0].vec(), Vec3(1, 0, 0));
  }
}

TEST(ForwardAxes, AtZeroFirstJointSecondAxisLiesInXYPlane) {
  const double c = std::acos(1.0 / 3);
  const PointSet axes = forward_axes(chain({c}, {std::nullopt, std::nullopt}), {0.0, 0.0});
  EXPECT_NEAR(axes[1].x(), 1.0 / 3, 1e-15);
  EXPECT_NEAR(axes[1].y(), 2 * std::sqrt(2.0) / 3, 1e-15);
  EXPECT_EQ(axes[1].z(), 0.0);
}

TEST(ForwardAxes, RegularTetrahedronChainIsIsotropic) {
  const double t = std::acos(-1.0 / 3);
  const auto dh = chain({t, t, t}, {std::nullopt, deg_to_rad(60), deg_to_rad(-60), std::nullopt});
  const PointSet axes = forward_axes(dh, {0.0, deg_to_rad(60), deg_to_rad(-60), 0.0});
  EXPECT_TRUE(isotropy_report(jacobian_from_axes(axes)).is_isotropic);
}

TEST(ForwardAxes, RightAngleChainIsOrthogonalTriad) {
  const auto dh = chain({kPi / 2, kPi / 2}, {std::nullopt, kPi / 2, std::nullopt});
  const PointSet axes = forward_axes(dh, {0.0, kPi / 2, 0.0});
  EXPECT_TRUE(same_ordered(axes, orthogonal_triad(), 1e-15));
  const auto r = isotropy_report(jacobian_from_axes(axes));
  EXPECT_NEAR(r.sigma, 1.0, 1e-15);
  EXPECT_TRUE(r.is_isotropic);
}

TEST(ForwardAxes, Errors) {
  const auto dh = chain({1.0, 1.0}, {std::nullopt, 0.5, std::nullopt});
  EXPECT_THROW(forward_axes(dh, {0.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(forward_axes(chain({0.0}, {std::nullopt, std::nullopt}), {0.0, 0.0}), std::domain_error);
  EXPECT_THROW(forward_axes(chain({1.0}, {std::nullopt}), {0.0}), std::invalid_argument);
}

TEST(ForwardFrames, AreRightHandedAndFollowTheChain) {
  const double t = std::acos(1.0 / 3);
  const auto dh = chain({t, 2.0, t}, {std::nullopt, 0.4, -1.1, std::nullopt});
  const std::array<double, 4> theta = {0.7, 0.4, -1.1, 2.5};
  const auto frames = forward_frames(dh, theta);
  ASSERT_EQ(frames.size(), 4u);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Mat3& r = frames[i].rotation;
    EXPECT_LE((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-14);
    if (i + 1 < frames.size()) {
      // x_i is the common normal, orthogonal to the next axis.
      EXPECT_NEAR(frames[i].x().dot(frames[i + 1].z()), 0.0, 1e-14);
      EXPECT_NEAR(frames[i].z().dot(frames[i + 1].z()), std::cos(dh.twists[i]), 1e-14);
    }
  }
}

TEST(DhFromAxes, RegularTetrahedron) {
  const auto dh = dh_from_axes(reference_tetrahedron());
  ASSERT_EQ(dh.twists.size(), 3u);
  for (double a : dh.twists) {
    EXPECT_NEAR(a, std::acos(-1.0 / 3), 1e-12);
    EXPECT_NEAR(rad_to_deg(a), 109.47122, 1e-5);
  }
  EXPECT_FALSE(dh.joints[0].has_value());
  EXPECT_FALSE(dh.joints[3].has_value());
  EXPECT_NEAR(std::abs(*dh.joints[1]), kPi / 3, 1e-12);
  EXPECT_NEAR(std::abs(*dh.joints[2]), kPi / 3, 1e-12);
}

TEST(DhFromAxes, AcuteTwistFromAntipodalImage) {
  const PointSet axes = antipodal_exchange(reference_tetrahedron(), {2});
  const auto dh = dh_from_axes(axes);
  EXPECT_NEAR(dh.twists[0], std::acos(1.0 / 3), 1e-12);
  EXPECT_NEAR(rad_to_deg(dh.twists[0]), 70.52878, 1e-5);
}

TEST(DhFromAxes, OrthogonalTriad) {
  const auto dh = dh_from_axes(orthogonal_triad());
  EXPECT_NEAR(dh.twists[0], kPi / 2, 1e-15);
  EXPECT_NEAR(dh.twists[1], kPi / 2, 1e-15);
  // n_1 = z, n_2 = x: a quarter turn about y.
  EXPECT_NEAR(*dh.joints[1], kPi / 2, 1e-15);
}

TEST(DhFromAxes, DegenerateTwist) {
  try {
    dh_from_axes(PointSet{UnitVec3(1, 0, 0), UnitVec3(-1, 0, 0)});
    FAIL() << "expected an exception";
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "degenerate twist");
  }
  EXPECT_THROW(dh_from_axes(PointSet{UnitVec3(1, 0, 0)}), std::invalid_argument);
}

TEST(DhFromAxes, RoundTripWithForwardAxes) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> twist(0.2, kPi - 0.2), angle(-kPi, kPi);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    DHChain dh;
    std::vector<double> theta;
    for (std::size_t i = 0; i < n; ++i) {
      if (i + 1 < n) dh.twists.push_back(twist(rng));
      theta.push_back(angle(rng));
      dh.joints.push_back(i == 0 || i + 1 == n ? std::nullopt : std::optional<double>(theta.back()));
    }
    const DHChain back = dh_from_axes(forward_axes(dh, theta));
    ASSERT_EQ(back.twists.size(), dh.twists.size());
    for (std::size_t i = 0; i < dh.twists.size(); ++i) EXPECT_NEAR(back.twists[i], dh.twists[i], 1e-9);
    for (std::size_t i = 1; i + 1 < n; ++i) EXPECT_NEAR(wrap_angle(*back.joints[i] - theta[i]), 0.0, 1e-9);
  }
}

TEST(Angles, WrapAndConvert) {
  EXPECT_NEAR(wrap_angle(3 * kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_angle(-kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_angle(-0.5), -0.5, 0.0);
  EXPECT_DOUBLE_EQ(rad_to_deg(deg_to_rad(123.0)), 123.0);
}
