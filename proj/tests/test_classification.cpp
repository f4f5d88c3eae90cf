#include "isowrist/classification.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

using namespace isowrist;

namespace {

const std::vector<SolutionRecord>& sols() {
  static const auto s = solutions_by_table_index();
  return s;
}

const std::vector<WristClass>& wrists() {
  static const auto w = distinct_wrists();
  return w;
}

const ReferenceWrist& ref(char label) {
  for (const auto& r : kReferenceWrists)
    if (r.label == label) return r;
  throw std::out_of_range("label");
}

}  // namespace

TEST(Orderings, CountsAndIdentityFirst) {
  const auto six = chain_orderings();
  const auto all = chain_orderings(true);
  EXPECT_EQ(six.size(), 6u);
  EXPECT_EQ(all.size(), 24u);
  EXPECT_EQ(six.front(), (AxisOrdering{0, 1, 2, 3}));
  for (const auto& o : six) EXPECT_EQ(o[0], 0u);
  EXPECT_EQ(std::set<AxisOrdering>(all.begin(), all.end()).size(), 24u);
}

TEST(Orderings, Reorder) {
  const PointSet t = reference_tetrahedron();
  const PointSet r = reorder(t, {0, 3, 1, 2});
  EXPECT_EQ(r[1], t[3]);
  EXPECT_EQ(r[2], t[1]);
  EXPECT_TRUE(same_points(r, t, 0.0));
}

TEST(AntipodalMaps, FromTheRegularTetrahedron) {
  const auto maps = antipodal_map_table(sols());
  const std::map<std::string, int> expected = {{"P2", 10},   {"P3", 23},   {"P4", 17},     {"P2P3", 16},
                                               {"P2P4", 9}, {"P3P4", 24}, {"P2P3P4", 15}};
  ASSERT_EQ(maps.size(), 7u);
  for (const auto& m : maps) {
    EXPECT_EQ(m.source_index, 18);
    EXPECT_EQ(m.operation, MapOperation::antipodal);
    EXPECT_EQ(m.target_index, expected.at(subset_label(m.subset))) << subset_label(m.subset);
  }
}

TEST(AntipodalMaps, DuplicatedHeaderIsResolved) {
  const auto cols = resolve_antipodal_columns(antipodal_map_table(sols()));
  ASSERT_EQ(cols.size(), 7u);
  int inconsistent = 0;
  for (const auto& c : cols) {
    EXPECT_FALSE(c.computed_subset.empty()) << c.published_header;
    if (!c.header_consistent) {
      ++inconsistent;
      EXPECT_EQ(c.published_header, "P2P4");
      EXPECT_EQ(c.published_target, 24);
      EXPECT_EQ(subset_label(c.computed_subset), "P3P4");
    }
  }
  EXPECT_EQ(inconsistent, 1);
}

TEST(AntipodalMaps, SubsetLabels) {
  EXPECT_EQ(subset_label(std::vector<std::size_t>{2, 4}), "P2P4");
  EXPECT_EQ(subset_label(std::vector<std::size_t>{}), "-");
}

TEST(ReflectionMaps, PublishedTargets) {
  const auto maps = reflection_map_table(sols());
  ASSERT_EQ(maps.size(), 24u);
  const std::array<int, 8> seeds = {18, 10, 23, 17, 16, 24, 9, 15};
  const std::array<std::array<int, 8>, 3> rows = {{{19, 12, 22, 20, 14, 21, 11, 13},
                                                   {27, 2, 29, 28, 8, 30, 1, 7},
                                                   {26, 4, 31, 25, 6, 32, 3, 5}}};
  const std::array<MapOperation, 3> ops = {MapOperation::reflect_xy, MapOperation::reflect_xz,
                                           MapOperation::reflect_xz_then_xy};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t k = 0; k < 8; ++k) {
      const auto& m = maps[r * 8 + k];
      EXPECT_EQ(m.source_index, seeds[k]);
      EXPECT_EQ(m.operation, ops[r]);
      EXPECT_EQ(m.target_index, rows[r][k]) << to_string(ops[r]) << " of " << seeds[k];
    }
  }
}

TEST(ReflectionMaps, BothPlanesIsAHalfTurnAboutX) {
  const PointSet t = reference_tetrahedron();
  const PointSet both = apply_map(t, MapOperation::reflect_xz_then_xy);
  EXPECT_TRUE(same_ordered(both, transform(t, reflect_about_line(UnitVec3(1, 0, 0))), 1e-15));
  EXPECT_EQ(match_table_index(both), 26);
}

TEST(ReflectionMaps, EveryImageOfEverySolutionIsListed) {
  std::set<int> reached;
  for (const auto& rec : sols()) {
    for (auto op : {MapOperation::reflect_xy, MapOperation::reflect_xz, MapOperation::reflect_xz_then_xy}) {
      const int target = match_table_index(apply_map(rec.axes(), op));
      EXPECT_NE(target, 0);
      EXPECT_NE(target, rec.table_index);
      reached.insert(target);
    }
  }
  EXPECT_EQ(reached.size(), 32u);
}

TEST(ReflectionMaps, UnknownSourceThrows) {
  EXPECT_THROW(reflection_map_table(sols(), std::array<int, 1>{33}), std::exception);
}

TEST(Signature, ReversalAndMirror) {
  const auto a = reference_chain(ref('a'));
  EXPECT_TRUE(same_signature(canonical_signature(reversed_chain(a)), canonical_signature(a)));

  const auto b = reference_chain(ref('b'));
  const auto d = reference_chain(ref('d'));
  EXPECT_FALSE(same_signature(canonical_signature(b), canonical_signature(d)));
  // Read from the other end, (b) has the parameters of (d).
  EXPECT_TRUE(same_signature(canonical_signature(reversed_chain(b)), canonical_signature(d)));

  const auto e = reference_chain(ref('e'));
  EXPECT_TRUE(same_signature(canonical_signature(mirrored_chain(e)), canonical_signature(e)));
  EXPECT_TRUE(same_signature(canonical_signature(reference_chain(ref('e'), -1)), canonical_signature(e)));
}

TEST(Signature, IdempotentAndPositive) {
  for (const auto& r : kReferenceWrists) {
    for (int sign : {1, -1}) {
      const auto sig = canonical_signature(reference_chain(r, sign));
      EXPECT_GT(std::sin(sig.theta2), 0.0);
      DHChain again;
      for (double c : sig.twist_cosines) again.twists.push_back(std::acos(c));
      again.joints = {std::nullopt, sig.theta2, sig.theta3, std::nullopt};
      EXPECT_TRUE(same_signature(canonical_signature(again), sig));
    }
  }
}

TEST(Signature, RejectsShortChains) {
  DHChain dh{{1.0, 1.0}, {std::nullopt, 0.5, std::nullopt}};
  EXPECT_THROW(canonical_signature(dh), std::invalid_argument);
}

TEST(Signature, ReversedChainMatchesReversedAxes) {
  for (int index : {1, 5, 18, 26}) {
    const PointSet axes = sols()[static_cast<std::size_t>(index - 1)].axes();
    const DHChain forward = dh_from_axes(axes);
    const DHChain backward = dh_from_axes(reorder(axes, {3, 2, 1, 0}));
    const DHChain rev = reversed_chain(forward);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(rev.twists[k], backward.twists[k], 1e-12);
    for (std::size_t k = 1; k < 3; ++k) EXPECT_NEAR(wrap_angle(*rev.joints[k] - *backward.joints[k]), 0.0, 1e-12);
  }
}

TEST(DistinctWrists, EightLabelledClasses) {
  const auto& classes = wrists();
  ASSERT_EQ(classes.size(), 8u);
  std::size_t total = 0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    EXPECT_EQ(classes[k].label, static_cast<char>('a' + k));
    EXPECT_EQ(classes[k].members.size(), 24u);
    total += classes[k].members.size();
  }
  EXPECT_EQ(total, 32u * 6u);
}

TEST(DistinctWrists, ParametersMatchReferenceEntries) {
  for (const auto& w : wrists()) {
    const auto& r = ref(w.label);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(w.signature.twist_cosines[k], r.twist_signs[k] / 3.0, 1e-12);
      EXPECT_NEAR(rad_to_deg(w.representative.twists[k]), r.twist_signs[k] > 0 ? 70.5 : 109.5, 0.05);
    }
    EXPECT_NEAR(rad_to_deg(w.signature.theta2), r.theta2_deg, 1e-9);
    EXPECT_NEAR(rad_to_deg(w.signature.theta3), r.theta3_deg, 1e-9);
  }
}

TEST(DistinctWrists, RegularTetrahedronInNaturalOrderIsClassA) {
  const auto& a = wrists().front();
  const bool found = std::any_of(a.members.begin(), a.members.end(), [](const ClassMember& m) {
    return m.solution_index == 18 && m.ordering == AxisOrdering{0, 1, 2, 3};
  });
  EXPECT_TRUE(found);
}

TEST(DistinctWrists, MembersReproduceTheirClass) {
  for (const auto& w : wrists()) {
    int mirrored = 0;
    for (const auto& m : w.members) {
      const DHChain dh = dh_from_axes(reorder(sols()[static_cast<std::size_t>(m.solution_index - 1)].axes(), m.ordering));
      EXPECT_TRUE(same_signature(canonical_signature(dh), w.signature));
      EXPECT_EQ(mirror_sign(dh, w.signature), m.sign);
      mirrored += m.sign < 0;
    }
    EXPECT_GT(mirrored, 0) << w.label;
  }
}

TEST(ReferenceWrists, CoupledReadingIsIsotropicOverFreeAngles) {
  for (const auto& r : kReferenceWrists) {
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) {
        const double t1 = deg_to_rad(30.0 * i), t4 = deg_to_rad(30.0 * j - 15.0);
        for (int sign : {1, -1}) {
          EXPECT_TRUE(chain_is_isotropic(reference_chain(r, sign), t1, t4)) << r.label;
          EXPECT_FALSE(chain_is_isotropic(reference_chain(r, sign, SignCoupling::anticoupled), t1, t4))
              << r.label;
        }
      }
    }
    const auto check = check_sign_coupling(r);
    EXPECT_TRUE(check.coupled_isotropic);
    EXPECT_FALSE(check.anticoupled_isotropic);
  }
}

TEST(ReferenceWrists, WrongJointValueIsNotIsotropic) {
  auto dh = reference_chain(ref('c'));
  dh.joints[1] = deg_to_rad(90);
  EXPECT_FALSE(chain_is_isotropic(dh, 0, 0));
}

TEST(Posture, ClassAAtFortyFiveDegrees) {
  const auto g = isotropic_posture_geometry(wrists().front(), deg_to_rad(45), 0.0);
  EXPECT_EQ(g.label, 'a');
  ASSERT_EQ(g.axes.size(), 4u);
  ASSERT_EQ(g.frames.size(), 4u);
  EXPECT_TRUE(g.report.is_isotropic);
  EXPECT_NEAR(g.report.sigma, std::sqrt(4.0 / 3.0), 1e-12);
  EXPECT_NEAR(g.report.condition_number, 1.0, 1e-12);
  EXPECT_EQ(g.axes[0].vec(), Vec3(1, 0, 0));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) EXPECT_NEAR(std::abs(g.axes[i].dot(g.axes[j])), 1.0 / 3, 1e-12);
}

TEST(Posture, EveryClassOverFreeAngles) {
  for (const auto& w : wrists()) {
    for (double t1 : {0.0, 1.0, -2.5})
      for (double t4 : {0.0, 0.7, 3.0}) EXPECT_TRUE(isotropic_posture_geometry(w, t1, t4).report.is_isotropic);
  }
}

TEST(Posture, FreeAngleFourDoesNotMoveAxes) {
  const auto& e = wrists()[4];
  const auto g0 = isotropic_posture_geometry(e, 0.3, 0.0);
  const auto g1 = isotropic_posture_geometry(e, 0.3, 2.0);
  EXPECT_TRUE(same_ordered(g0.axes, g1.axes, 1e-14));
}
