// Grouping the 32 algebraic solutions into distinct wrists: symmetry maps
// between solutions (antipodal exchanges, coordinate-plane reflections),
// chain orderings, DH signatures and the eight isotropic architectures.
#pragma once

#include "isowrist/isotropy_solver.hpp"
#include "isowrist/sphere_geometry.hpp"
#include "isowrist/wrist_kinematics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace isowrist {

/// Table row of the regular tetrahedron placed with e_1 on x, e_2 in x-y.
inline constexpr int kTrivialSolution = 18;

/// Distinct isotropic four-axis wrists.
inline constexpr std::size_t kWristClassCount = 8;

/// Tolerance for comparing signature cosines and angles.
inline constexpr double kSignatureTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Chain orderings

/// A permutation of the four axes, 0-based: ordering[i] is the axis placed
/// at joint i+1.
using AxisOrdering = std::array<std::size_t, 4>;

/// The six orderings keeping e_1 first, or all 24 when `all` is set, in
/// lexicographic order (identity first).
inline std::vector<AxisOrdering> chain_orderings(bool all = false) {
  std::vector<AxisOrdering> out;
  AxisOrdering p{0, 1, 2, 3};
  do {
    if (all || p[0] == 0) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline PointSet reorder(const PointSet& axes, const AxisOrdering& ordering) {
  std::vector<UnitVec3> pts;
  for (std::size_t k : ordering) pts.push_back(axes[k]);
  return PointSet(std::move(pts));
}

// ---------------------------------------------------------------------------
// Solution maps

enum class MapOperation { antipodal, reflect_xy, reflect_xz, reflect_xz_then_xy };

inline std::string_view to_string(MapOperation op) {
  switch (op) {
    case MapOperation::antipodal: return "antipodal";
    case MapOperation::reflect_xy: return "reflect_xy";
    case MapOperation::reflect_xz: return "reflect_xz";
    case MapOperation::reflect_xz_then_xy: return "reflect_xz_then_xy";
  }
  return "?";
}

struct SolutionMap {
  int source_index = 0;
  MapOperation operation = MapOperation::antipodal;
  /// 1-based point indices exchanged; empty unless operation is antipodal.
  std::vector<std::size_t> subset;
  int target_index = 0;
};

inline PointSet apply_map(const PointSet& axes, MapOperation op,
                          std::span<const std::size_t> subset = {}) {
  const UnitVec3 z_normal(0.0, 0.0, 1.0);
  const UnitVec3 y_normal(0.0, 1.0, 0.0);
  switch (op) {
    case MapOperation::antipodal: return antipodal_exchange(axes, subset);
    case MapOperation::reflect_xy: return reflect_about_plane(axes, z_normal);
    case MapOperation::reflect_xz: return reflect_about_plane(axes, y_normal);
    case MapOperation::reflect_xz_then_xy:
      return reflect_about_plane(reflect_about_plane(axes, y_normal), z_normal);
  }
  return axes;
}

namespace detail {

inline const SolutionRecord& record_at(const std::vector<SolutionRecord>& by_index, int index) {
  if (index < 1 || static_cast<std::size_t>(index) > by_index.size() ||
      by_index[static_cast<std::size_t>(index - 1)].table_index != index) {
    throw std::invalid_argument("solutions must be ordered by table index 1..32");
  }
  return by_index[static_cast<std::size_t>(index - 1)];
}

inline SolutionMap make_map(const std::vector<SolutionRecord>& by_index, int source,
                            MapOperation op, std::vector<std::size_t> subset = {}) {
  const PointSet image = apply_map(record_at(by_index, source).axes(), op, subset);
  const int target = match_table_index(image);
  if (target == 0) {
    std::ostringstream msg;
    msg << "image of solution " << source << " under " << to_string(op) << " matches no solution";
    throw ConsistencyError(msg.str());
  }
  return {source, op, std::move(subset), target};
}

}  // namespace detail

/// The seven nonempty subsets of {2, 3, 4}, ordered as the published
/// antipodal-exchange columns: singletons, pairs, then the triple.
inline std::vector<std::vector<std::size_t>> antipodal_subsets() {
  return {{2}, {3}, {4}, {2, 3}, {2, 4}, {3, 4}, {2, 3, 4}};
}

/// Antipodal exchanges of each nonempty subset of {P_2, P_3, P_4} applied to
/// `source`, matched to their table rows.
inline std::vector<SolutionMap> antipodal_map_table(const std::vector<SolutionRecord>& by_index,
                                                    int source = kTrivialSolution) {
  std::vector<SolutionMap> out;
  for (auto& subset : antipodal_subsets()) {
    out.push_back(detail::make_map(by_index, source, MapOperation::antipodal, subset));
  }
  return out;
}

/// Seeds of the reflection table: the trivial set and its seven antipodal
/// images, in the published column order.
inline constexpr std::array<int, 8> kReflectionSeeds = {18, 10, 23, 17, 16, 24, 9, 15};

/// Three maps per seed: reflection about x-y, about x-z, and about both.
inline std::vector<SolutionMap> reflection_map_table(const std::vector<SolutionRecord>& by_index,
                                                     std::span<const int> seeds = kReflectionSeeds) {
  std::vector<SolutionMap> out;
  for (MapOperation op :
       {MapOperation::reflect_xy, MapOperation::reflect_xz, MapOperation::reflect_xz_then_xy}) {
    for (int seed : seeds) out.push_back(detail::make_map(by_index, seed, op));
  }
  return out;
}

/// One column of the published antipodal-exchange table together with the
/// subset that actually produces its solution number.
struct AntipodalColumn {
  std::string published_header;
  int published_target = 0;
  std::vector<std::size_t> computed_subset;
  bool header_consistent = false;
};

inline std::string subset_label(std::span<const std::size_t> subset) {
  std::string s;
  for (std::size_t k : subset) s += "P" + std::to_string(k);
  return s.empty() ? "-" : s;
}

/// Reconciles the published column headers (one of which is printed twice)
/// with the computed antipodal maps.
inline std::vector<AntipodalColumn> resolve_antipodal_columns(const std::vector<SolutionMap>& maps) {
  const std::array<std::pair<std::string_view, int>, 7> published = {{{"P2", 10},
                                                                      {"P3", 23},
                                                                      {"P4", 17},
                                                                      {"P2P3", 16},
                                                                      {"P2P4", 24},
                                                                      {"P2P4", 9},
                                                                      {"P2P3P4", 15}}};
  std::vector<AntipodalColumn> out;
  for (const auto& [header, target] : published) {
    AntipodalColumn col{std::string(header), target, {}, false};
    for (const auto& m : maps) {
      if (m.operation == MapOperation::antipodal && m.target_index == target) {
        col.computed_subset = m.subset;
      }
    }
    col.header_consistent = subset_label(col.computed_subset) == col.published_header;
    out.push_back(std::move(col));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Signatures and wrist classes

/// DH chain read from the other end: twists reversed, joint angles reversed
/// and negated (the common normals flip direction).
inline DHChain reversed_chain(const DHChain& dh) {
  DHChain r;
  r.twists.assign(dh.twists.rbegin(), dh.twists.rend());
  for (auto it = dh.joints.rbegin(); it != dh.joints.rend(); ++it) {
    r.joints.push_back(*it ? std::optional<double>(wrap_angle(-**it)) : std::nullopt);
  }
  return r;
}

/// DH chain of the mirror-image wrist: every joint angle negated.
inline DHChain mirrored_chain(const DHChain& dh) {
  DHChain r = dh;
  for (auto& j : r.joints) {
    if (j) j = wrap_angle(-*j);
  }
  return r;
}

/// Identifies a four-axis wrist up to mirror image, ignoring the free angles
/// theta_1 and theta_4. Angles lie in (-pi, pi].
struct CanonicalSignature {
  std::array<double, 3> twist_cosines{};
  double theta2 = 0.0;
  double theta3 = 0.0;
};

inline bool same_signature(const CanonicalSignature& a, const CanonicalSignature& b,
                           double tol = kSignatureTolerance) {
  for (std::size_t k = 0; k < 3; ++k) {
    if (std::abs(a.twist_cosines[k] - b.twist_cosines[k]) > tol) return false;
  }
  return std::abs(wrap_angle(a.theta2 - b.theta2)) <= tol &&
         std::abs(wrap_angle(a.theta3 - b.theta3)) <= tol;
}

inline CanonicalSignature canonical_signature(const DHChain& dh) {
  if (dh.joint_count() != 4 || dh.twists.size() != 3 || !dh.joints[1] || !dh.joints[2]) {
    throw std::invalid_argument("signature needs a four-joint chain with theta_2 and theta_3");
  }
  CanonicalSignature sig;
  const auto c = dh.twist_cosines();
  std::copy(c.begin(), c.end(), sig.twist_cosines.begin());
  double t2 = wrap_angle(*dh.joints[1]);
  double t3 = wrap_angle(*dh.joints[2]);
  // Mirror is (t2, t3) -> (-t2, -t3); keep the member with sin(t2) > 0, or
  // with sin(t3) >= 0 when t2 is 0 or pi.
  const bool flip = std::sin(t2) < -kSignatureTolerance ||
                    (std::abs(std::sin(t2)) <= kSignatureTolerance && std::sin(t3) < -kSignatureTolerance);
  if (flip) {
    t2 = wrap_angle(-t2);
    t3 = wrap_angle(-t3);
  }
  sig.theta2 = t2;
  sig.theta3 = t3;
  return sig;
}

/// A reference wrist: twist cosines as signs of 1/3 and the joint
/// values read with the upper sign, in degrees.
struct ReferenceWrist {
  char label;
  std::array<int, 3> twist_signs;
  double theta2_deg;
  double theta3_deg;
};

/// The eight published architectures (a)-(h). A twist sign of -1 is
/// arccos(-1/3) = 109.47 deg, +1 is arccos(1/3) = 70.53 deg.
inline constexpr std::array<ReferenceWrist, kWristClassCount> kReferenceWrists = {{
    {'a', {-1, -1, -1}, 60, -60},
    {'b', {+1, -1, -1}, 120, 60},
    {'c', {-1, +1, -1}, 120, 120},
    {'d', {-1, -1, +1}, 60, 120},
    {'e', {+1, +1, +1}, 60, 60},
    {'f', {+1, +1, -1}, 60, -120},
    {'g', {-1, +1, +1}, 120, -60},
    {'h', {+1, -1, +1}, 120, -120},
}};

enum class SignCoupling { coupled, anticoupled };

/// DH chain of a reference entry. `sign` picks the upper (+1) or lower (-1)
/// reading of theta_2; the coupling decides the sign read for theta_3.
inline DHChain reference_chain(const ReferenceWrist& ref, int sign = 1,
                               SignCoupling coupling = SignCoupling::coupled) {
  DHChain dh;
  for (int s : ref.twist_signs) dh.twists.push_back(std::acos(s / 3.0));
  const int sign3 = coupling == SignCoupling::coupled ? sign : -sign;
  dh.joints = {std::nullopt, deg_to_rad(sign * ref.theta2_deg), deg_to_rad(sign3 * ref.theta3_deg),
               std::nullopt};
  return dh;
}

/// Whether a reference entry is isotropic under each reading of its +-
/// joint columns (both signs of theta_2 must work for a reading to pass).
struct CouplingCheck {
  char label;
  bool coupled_isotropic;
  bool anticoupled_isotropic;
};

inline bool chain_is_isotropic(const DHChain& dh, double theta1, double theta4,
                               double tol = kIsotropyTolerance) {
  const std::array<double, 4> theta = {theta1, *dh.joints[1], *dh.joints[2], theta4};
  return isotropy_report(jacobian_from_axes(forward_axes(dh, theta)), tol).is_isotropic;
}

inline CouplingCheck check_sign_coupling(const ReferenceWrist& ref) {
  const auto passes = [&](SignCoupling cp) {
    return chain_is_isotropic(reference_chain(ref, +1, cp), 0, 0) &&
           chain_is_isotropic(reference_chain(ref, -1, cp), 0, 0);
  };
  return {ref.label, passes(SignCoupling::coupled), passes(SignCoupling::anticoupled)};
}

struct ClassMember {
  int solution_index = 0;
  AxisOrdering ordering{};
  /// +1 when the member's joints equal the representative's, -1 when they
  /// are its mirror image.
  int sign = 1;
};

struct WristClass {
  char label = '?';
  DHChain representative;
  CanonicalSignature signature;
  std::vector<ClassMember> members;
};

/// Joint-wise sign relating a chain to its class signature.
inline int mirror_sign(const DHChain& dh, const CanonicalSignature& sig) {
  return std::abs(wrap_angle(*dh.joints[1] - sig.theta2)) <= kSignatureTolerance &&
                 std::abs(wrap_angle(*dh.joints[2] - sig.theta3)) <= kSignatureTolerance
             ? 1
             : -1;
}

/// Builds every (solution, ordering) chain with e_1 first, groups them by
/// signature and labels the groups against the reference entries (a)-(h).
/// Throws ConsistencyError with a signature dump unless exactly eight groups
/// arise and each matches one reference entry.
inline std::vector<WristClass> distinct_wrists() {
  std::vector<WristClass> classes;
  for (const auto& rec : solutions_by_table_index()) {
    const PointSet axes = rec.axes();
    for (const auto& ordering : chain_orderings()) {
      const DHChain dh = dh_from_axes(reorder(axes, ordering));
      const CanonicalSignature sig = canonical_signature(dh);
      auto it = std::find_if(classes.begin(), classes.end(),
                             [&](const WristClass& w) { return same_signature(w.signature, sig); });
      if (it == classes.end()) {
        WristClass w;
        w.signature = sig;
        w.representative.twists.clear();
        for (double c : sig.twist_cosines) w.representative.twists.push_back(std::acos(c));
        w.representative.joints = {std::nullopt, sig.theta2, sig.theta3, std::nullopt};
        classes.push_back(std::move(w));
        it = std::prev(classes.end());
      }
      it->members.push_back({rec.table_index, ordering, mirror_sign(dh, it->signature)});
    }
  }

  const auto dump = [&] {
    std::ostringstream os;
    os << classes.size() << " signature groups:";
    for (const auto& w : classes) {
      os << "\n  cos(alpha) = (" << w.signature.twist_cosines[0] << ", " << w.signature.twist_cosines[1]
         << ", " << w.signature.twist_cosines[2] << "), theta2 = " << rad_to_deg(w.signature.theta2)
         << " deg, theta3 = " << rad_to_deg(w.signature.theta3) << " deg, members = " << w.members.size();
    }
    return os.str();
  };
  if (classes.size() != kWristClassCount) {
    throw ConsistencyError("expected 8 distinct wrists; " + dump());
  }
  for (auto& w : classes) {
    for (const auto& ref : kReferenceWrists) {
      if (same_signature(w.signature, canonical_signature(reference_chain(ref)))) w.label = ref.label;
    }
    if (w.label == '?') throw ConsistencyError("a wrist matches no reference entry; " + dump());
  }
  std::sort(classes.begin(), classes.end(),
            [](const WristClass& a, const WristClass& b) { return a.label < b.label; });
  for (std::size_t k = 1; k < classes.size(); ++k) {
    if (classes[k].label == classes[k - 1].label) {
      throw ConsistencyError("two wrists share a reference label; " + dump());
    }
  }
  return classes;
}

/// Axes, joint frames and isotropy report of a wrist at its isotropic
/// posture for the given free angles (radians).
struct PostureGeometry {
  char label = '?';
  std::array<double, 4> joint_angles{};
  PointSet axes;
  std::vector<JointFrame> frames;
  IsotropyReport report;
};

inline PostureGeometry isotropic_posture_geometry(const WristClass& w, double theta1, double theta4,
                                                  double tol = kIsotropyTolerance) {
  PostureGeometry g;
  g.label = w.label;
  g.joint_angles = {theta1, *w.representative.joints[1], *w.representative.joints[2], theta4};
  g.frames = forward_frames(w.representative, g.joint_angles);
  g.axes = forward_axes(w.representative, g.joint_angles);
  g.report = isotropy_report(jacobian_from_axes(g.axes), tol);
  return g;
}

}  // namespace isowrist
