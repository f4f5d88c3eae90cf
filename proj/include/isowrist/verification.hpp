// Invariant suite behind `isowrist verify`: every check reports its
// worst-case value against the bound it was held to.
#pragma once

#include "isowrist/classification.hpp"
#include "isowrist/isotropy_solver.hpp"
#include "isowrist/sphere_geometry.hpp"
#include "isowrist/wrist_kinematics.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace isowrist {

struct VerifyOptions {
  double tolerance = 1e-12;
  std::size_t oracle_starts = 20000;
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;
  /// Worst observed value and the bound it was compared with.
  double worst = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed || c.skipped; });
  }
};

namespace detail {

inline CheckResult bounded(std::string name, double worst, double bound, std::string detail = {}) {
  return {std::move(name), worst <= bound, false, worst, bound, std::move(detail)};
}

/// Runs `body` and turns any exception into a failed check.
inline CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, false, INFINITY, 0.0, e.what()};
  }
}

inline double nearest_magnitude_gap(double v) {
  const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  double gap = INFINITY;
  for (double m : {1.0 / 3, r2 / 3, r6 / 3, 2 * r2 / 3}) gap = std::min(gap, std::abs(std::abs(v) - m));
  return gap;
}

}  // namespace detail

inline VerificationReport run_verification(const VerifyOptions& opt) {
  using detail::bounded;
  using detail::guarded;
  const double tol = opt.tolerance;
  VerificationReport rep;
  auto& out = rep.checks;

  std::vector<SolutionRecord> sols;
  out.push_back(guarded("solutions.table_bijection", [&] {
    sols = solutions_by_table_index();
    double worst = 0;
    for (const auto& r : sols) {
      worst = std::max(worst, max_distance(r.values, reference_table()[static_cast<std::size_t>(r.table_index - 1)]));
    }
    return bounded("solutions.table_bijection", worst, tol, "32 branches matched to rows 1..32");
  }));
  if (sols.size() != kSolutionCount) return rep;

  out.push_back(guarded("solutions.residuals", [&] {
    double worst = 0;
    for (const auto& r : sols) worst = std::max(worst, max_abs(residuals(r.values)));
    return bounded("solutions.residuals", worst, tol);
  }));

  out.push_back(guarded("solutions.nonvanishing", [&] {
    double smallest = INFINITY;
    bool ok = true;
    for (const auto& r : sols) {
      ok = ok && verify_nonvanishing(r.values);
      for (double v : r.values.as_array()) smallest = std::min(smallest, std::abs(v));
    }
    CheckResult c{"solutions.nonvanishing", ok, false, smallest, 1.0 / 3.0, "min |component| vs 1/3"};
    return c;
  }));

  out.push_back(guarded("solutions.radical_magnitudes", [&] {
    double worst = 0;
    for (const auto& r : sols)
      for (double v : r.values.as_array()) worst = std::max(worst, detail::nearest_magnitude_gap(v));
    return bounded("solutions.radical_magnitudes", worst, tol);
  }));

  out.push_back(guarded("solutions.axis_angles", [&] {
    double worst = 0;
    for (const auto& r : sols) {
      const PointSet a = r.axes();
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) worst = std::max(worst, std::abs(std::abs(a[i].dot(a[j])) - 1.0 / 3.0));
    }
    return bounded("solutions.axis_angles", worst, tol, "all pairwise dot products are +-1/3");
  }));

  out.push_back(guarded("symmetry.antipodal_closure", [&] {
    double worst = 0;
    for (const auto& r : sols) {
      for (const auto& subset : antipodal_subsets()) {
        const PointSet img = antipodal_exchange(r.axes(), subset);
        const int t = match_table_index(img, tol);
        worst = std::max(worst, t ? max_distance(img, sols[static_cast<std::size_t>(t - 1)].axes()) : INFINITY);
      }
    }
    return bounded("symmetry.antipodal_closure", worst, tol);
  }));

  out.push_back(guarded("symmetry.reflection_closure", [&] {
    double worst = 0;
    for (const auto& r : sols) {
      for (auto op : {MapOperation::reflect_xy, MapOperation::reflect_xz, MapOperation::reflect_xz_then_xy}) {
        const PointSet img = apply_map(r.axes(), op);
        const int t = match_table_index(img, tol);
        worst = std::max(worst, t ? max_distance(img, sols[static_cast<std::size_t>(t - 1)].axes()) : INFINITY);
      }
    }
    return bounded("symmetry.reflection_closure", worst, tol);
  }));

  out.push_back(guarded("symmetry.antipodal_table", [&] {
    const auto cols = resolve_antipodal_columns(antipodal_map_table(sols));
    int unresolved = 0;
    std::string note;
    for (const auto& c : cols) {
      if (c.computed_subset.empty()) ++unresolved;
      if (!c.header_consistent) note += (note.empty() ? "" : "; ") + c.published_header + "(" + std::to_string(c.published_target) + ") is " + subset_label(c.computed_subset);
    }
    return bounded("symmetry.antipodal_table", unresolved, 0, note);
  }));

  out.push_back(guarded("symmetry.reflection_table", [&] {
    const std::array<std::array<int, 8>, 3> expected = {{{19, 12, 22, 20, 14, 21, 11, 13},
                                                          {27, 2, 29, 28, 8, 30, 1, 7},
                                                          {26, 4, 31, 25, 6, 32, 3, 5}}};
    const auto maps = reflection_map_table(sols);
    int mismatches = 0;
    for (std::size_t k = 0; k < maps.size(); ++k) mismatches += maps[k].target_index != expected[k / 8][k % 8];
    return bounded("symmetry.reflection_table", mismatches, 0, "24 entries");
  }));

  std::vector<WristClass> classes;
  out.push_back(guarded("wrists.distinct_count", [&] {
    classes = distinct_wrists();
    double worst = 0;
    for (const auto& w : classes) {
      const auto& ref = *std::find_if(kReferenceWrists.begin(), kReferenceWrists.end(),
                                      [&](const auto& r) { return r.label == w.label; });
      for (std::size_t i = 0; i < 3; ++i) {
        const double tab = ref.twist_signs[i] < 0 ? 109.5 : 70.5;
        worst = std::max(worst, std::abs(rad_to_deg(w.representative.twists[i]) - tab));
      }
    }
    CheckResult c = bounded("wrists.distinct_count", worst, 0.05, "twist degrees vs one-decimal table");
    c.passed = c.passed && classes.size() == kWristClassCount;
    return c;
  }));

  out.push_back(guarded("wrists.posture_isotropy", [&] {
    double worst = 0;
    for (const auto& w : classes) {
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
          const auto g = isotropic_posture_geometry(w, deg_to_rad(72.0 * i), deg_to_rad(72.0 * j));
          worst = std::max({worst, std::abs(g.report.condition_number - 1.0),
                            std::abs(g.report.singular_values[2] - std::sqrt(4.0 / 3.0)),
                            std::abs(g.report.singular_values[0] - std::sqrt(4.0 / 3.0))});
        }
    }
    CheckResult c = bounded("wrists.posture_isotropy", worst, std::max(tol, 1e-9), "8 classes x 5x5 free-angle grid");
    c.passed = c.passed && classes.size() == kWristClassCount;
    return c;
  }));

  out.push_back(guarded("wrists.sign_coupling", [&] {
    int bad = 0;
    for (const auto& ref : kReferenceWrists) {
      const auto cc = check_sign_coupling(ref);
      bad += !cc.coupled_isotropic || cc.anticoupled_isotropic;
    }
    return bounded("wrists.sign_coupling", bad, 0, "coupled +- reading isotropic, anti-coupled not");
  }));

  out.push_back(guarded("geometry.platonic", [&] {
    double worst = 0;
    bool iso = true;
    for (auto kind : kAllPlatonicSolids) {
      const auto r = isotropy_of(second_moment(platonic_vertices(kind)), std::max(tol, 1e-15));
      iso = iso && r.isotropic;
      worst = std::max(worst, std::abs(r.sigma_sq - static_cast<double>(vertex_count(kind)) / 3.0));
    }
    CheckResult c = bounded("geometry.platonic", worst, tol, "sigma^2 = n/3");
    c.passed = c.passed && iso;
    return c;
  }));

  out.push_back(guarded("geometry.reflected_tetrahedra", [&] {
    const PointSet tet = reference_tetrahedron();
    const double a = 1.0 / 3, b = std::sqrt(2.0) / 3, c6 = std::sqrt(6.0) / 3;
    // Published images about the y-z, x-z and x-y planes.
    const std::array<PointSet, 3> expected = {
        PointSet{UnitVec3(-1, 0, 0), UnitVec3(a, -2 * b, 0), UnitVec3(a, b, c6), UnitVec3(a, b, -c6)},
        PointSet{UnitVec3(1, 0, 0), UnitVec3(-a, 2 * b, 0), UnitVec3(-a, -b, c6), UnitVec3(-a, -b, -c6)},
        PointSet{UnitVec3(1, 0, 0), UnitVec3(-a, -2 * b, 0), UnitVec3(-a, b, -c6), UnitVec3(-a, b, c6)}};
    const std::array<Vec3, 3> normals = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
    double worst = 0;
    bool iso = true;
    for (std::size_t k = 0; k < 3; ++k) {
      const PointSet img = reflect_about_plane(tet, UnitVec3(normals[k]));
      worst = std::max(worst, max_distance(img, expected[k]));
      iso = iso && isotropy_of(second_moment(img)).isotropic;
    }
    CheckResult c = bounded("geometry.reflected_tetrahedra", worst, tol);
    c.passed = c.passed && iso;
    return c;
  }));

  out.push_back(guarded("geometry.line_reflection", [&] {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd;
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const UnitVec3 e = UnitVec3::normalized(Vec3(nd(rng), nd(rng), nd(rng)));
      const Mat3 l = reflect_about_line(e);
      const Mat3 rot = Eigen::AngleAxisd(std::numbers::pi, e.vec()).toRotationMatrix();
      worst = std::max({worst, (l * l.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff(),
                        std::abs(l.determinant() - 1.0), (l * e.vec() - e.vec()).cwiseAbs().maxCoeff(),
                        (l - rot).cwiseAbs().maxCoeff()});
    }
    return bounded("geometry.line_reflection", worst, tol, "100 random axes");
  }));

  out.push_back(guarded("kinematics.trace_identity", [&] {
    std::mt19937_64 rng(opt.seed + 1);
    std::normal_distribution<double> nd;
    double worst = 0;
    for (int k = 0; k < 200; ++k) {
      std::vector<UnitVec3> pts;
      const int n = 1 + k % 7;
      for (int i = 0; i < n; ++i) pts.push_back(UnitVec3::normalized(Vec3(nd(rng), nd(rng), nd(rng))));
      const auto r = isotropy_report(jacobian_from_axes(PointSet(pts)));
      double sq = 0;
      for (double s : r.singular_values) sq += s * s;
      worst = std::max(worst, std::abs(sq - n));
    }
    return bounded("kinematics.trace_identity", worst, tol, "sum of squared singular values = n");
  }));

  if (opt.oracle_starts == 0) {
    out.push_back({"oracle.root_hunt", false, true, 0, 0, "skipped (oracle starts = 0)"});
  } else {
    out.push_back(guarded("oracle.root_hunt", [&] {
      const auto hunt = oracle_root_hunt(opt.oracle_starts, opt.seed);
      double worst = 0;
      std::size_t extraneous = 0;
      std::vector<bool> hit(kSolutionCount, false);
      for (const auto& root : hunt.roots) {
        double best = INFINITY;
        std::size_t best_k = 0;
        for (std::size_t k = 0; k < sols.size(); ++k) {
          const double d = max_distance(root, sols[k].values);
          if (d < best) best = d, best_k = k;
        }
        if (best > 1e-8) ++extraneous;
        else hit[best_k] = true;
        worst = std::max(worst, best);
      }
      const auto found = std::count(hit.begin(), hit.end(), true);
      CheckResult c = bounded("oracle.root_hunt", worst, 1e-8,
                              std::to_string(hunt.roots.size()) + " clusters, " + std::to_string(found) +
                                  "/32 closed-form roots reached, " + std::to_string(extraneous) + " extraneous, " +
                                  std::to_string(hunt.discarded) + "/" + std::to_string(hunt.starts) +
                                  " starts discarded; Bezout bound " + std::to_string(kBezoutNumber));
      c.passed = c.passed && extraneous == 0 && kBezoutNumber == 256;
      return c;
    }));
  }
  return rep;
}

}  // namespace isowrist
