// Point sets on the unit sphere: second moments, isotropy, Platonic
// vertex sets, antipodal exchanges and reflections.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace isowrist {

/// Tolerance on |norm - 1| accepted for a unit vector.
inline constexpr double kUnitNormTolerance = 1e-12;

/// Default entrywise tolerance for isotropy tests on moment tensors.
inline constexpr double kIsotropyTolerance = 1e-9;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// A direction in R^3 of unit Euclidean norm.
class UnitVec3 {
 public:
  /// Throws std::invalid_argument unless |v| = 1 within kUnitNormTolerance.
  explicit UnitVec3(const Vec3& v) : v_(v) {
    if (!std::isfinite(v.norm()) || std::abs(v.norm() - 1.0) > kUnitNormTolerance) {
      throw std::invalid_argument("vector is not of unit norm");
    }
  }
  UnitVec3(double x, double y, double z) : UnitVec3(Vec3(x, y, z)) {}

  /// Scales a nonzero vector to unit norm.
  static UnitVec3 normalized(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    return UnitVec3(v / n);
  }

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double dot(const UnitVec3& o) const { return v_.dot(o.v_); }

  UnitVec3 operator-() const { return UnitVec3(Unchecked{}, -v_); }

  friend bool operator==(const UnitVec3& a, const UnitVec3& b) { return a.v_ == b.v_; }

 private:
  struct Unchecked {};
  UnitVec3(Unchecked, const Vec3& v) : v_(v) {}

  Vec3 v_;
};

/// Ordered list of points on the unit sphere. Order matters: the k-th point
/// is the k-th joint axis when the set is read as a wrist.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<UnitVec3> points) : points_(std::move(points)) {}
  PointSet(std::initializer_list<UnitVec3> points) : points_(points) {}

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const UnitVec3& operator[](std::size_t k) const { return points_[k]; }
  std::span<const UnitVec3> points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Max entrywise distance between two equally sized ordered sets.
  friend double max_distance(const PointSet& a, const PointSet& b) {
    if (a.size() != b.size()) return INFINITY;
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      d = std::max(d, (a[k].vec() - b[k].vec()).cwiseAbs().maxCoeff());
    }
    return d;
  }

 private:
  std::vector<UnitVec3> points_;
};

/// True when both ordered lists agree point by point within tol.
inline bool same_ordered(const PointSet& a, const PointSet& b, double tol) {
  return max_distance(a, b) <= tol;
}

/// True when b is a permutation of a, points compared within tol.
inline bool same_points(const PointSet& a, const PointSet& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& p : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (!used[j] && (p.vec() - b[j].vec()).cwiseAbs().maxCoeff() <= tol) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Second-moment tensor H = sum_k e_k e_k^T of a point set.
struct MomentTensor {
  Mat3 matrix = Mat3::Zero();

  double trace() const { return matrix.trace(); }
};

inline MomentTensor second_moment(const PointSet& s) {
  if (s.empty()) throw std::invalid_argument("empty point set");
  MomentTensor h;
  for (const auto& e : s) h.matrix.noalias() += e.vec() * e.vec().transpose();
  return h;
}

struct IsotropyTest {
  bool isotropic = false;
  /// trace(H)/3; the proportionality factor of H = sigma^2 I when isotropic.
  double sigma_sq = 0.0;
};

inline IsotropyTest isotropy_of(const MomentTensor& h, double tol = kIsotropyTolerance) {
  const double mean = h.trace() / 3.0;
  const double dev = (h.matrix - mean * Mat3::Identity()).cwiseAbs().maxCoeff();
  return {dev <= tol && mean > tol, mean};
}

enum class PlatonicSolid { tetrahedron, cube, octahedron, icosahedron, dodecahedron };

inline constexpr PlatonicSolid kAllPlatonicSolids[] = {
    PlatonicSolid::tetrahedron, PlatonicSolid::cube, PlatonicSolid::octahedron,
    PlatonicSolid::icosahedron, PlatonicSolid::dodecahedron};

inline constexpr std::size_t vertex_count(PlatonicSolid kind) {
  switch (kind) {
    case PlatonicSolid::tetrahedron: return 4;
    case PlatonicSolid::cube: return 8;
    case PlatonicSolid::octahedron: return 6;
    case PlatonicSolid::icosahedron: return 12;
    case PlatonicSolid::dodecahedron: return 20;
  }
  return 0;
}

inline std::string_view to_string(PlatonicSolid kind) {
  switch (kind) {
    case PlatonicSolid::tetrahedron: return "tetrahedron";
    case PlatonicSolid::cube: return "cube";
    case PlatonicSolid::octahedron: return "octahedron";
    case PlatonicSolid::icosahedron: return "icosahedron";
    case PlatonicSolid::dodecahedron: return "dodecahedron";
  }
  return "?";
}

inline PlatonicSolid parse_platonic(std::string_view name) {
  for (auto kind : kAllPlatonicSolids) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown Platonic solid: " + std::string(name));
}

/// The regular tetrahedron with e_1 on the x axis and e_2 in the x-y plane.
inline PointSet reference_tetrahedron() {
  const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  return {UnitVec3(1.0, 0.0, 0.0), UnitVec3(-1.0 / 3, -2 * r2 / 3, 0.0),
          UnitVec3(-1.0 / 3, r2 / 3, r6 / 3), UnitVec3(-1.0 / 3, r2 / 3, -r6 / 3)};
}

/// Vertices of a Platonic solid inscribed in the unit sphere.
inline PointSet platonic_vertices(PlatonicSolid kind) {
  std::vector<UnitVec3> pts;
  const auto add = [&pts](double x, double y, double z) {
    pts.push_back(UnitVec3::normalized(Vec3(x, y, z)));
  };
  // (0, +-b, +-c) and its two cyclic shifts.
  const auto add_cyclic = [&add](double b, double c) {
    const double a = 0.0;
    for (double sb : {1.0, -1.0}) {
      for (double sc : {1.0, -1.0}) {
        add(a, sb * b, sc * c);
        add(sc * c, a, sb * b);
        add(sb * b, sc * c, a);
      }
    }
  };
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;

  switch (kind) {
    case PlatonicSolid::tetrahedron:
      return reference_tetrahedron();
    case PlatonicSolid::cube:
      for (double x : {1.0, -1.0})
        for (double y : {1.0, -1.0})
          for (double z : {1.0, -1.0}) add(x, y, z);
      break;
    case PlatonicSolid::octahedron:
      for (double s : {1.0, -1.0}) {
        add(s, 0, 0);
        add(0, s, 0);
        add(0, 0, s);
      }
      break;
    case PlatonicSolid::icosahedron:
      add_cyclic(1.0, phi);
      break;
    case PlatonicSolid::dodecahedron:
      for (double x : {1.0, -1.0})
        for (double y : {1.0, -1.0})
          for (double z : {1.0, -1.0}) add(x, y, z);
      add_cyclic(1.0 / phi, phi);
      break;
  }
  return PointSet(std::move(pts));
}

/// Replaces e_k by -e_k for every 1-based index k in `subset`.
inline PointSet antipodal_exchange(const PointSet& s, std::span<const std::size_t> subset) {
  std::vector<UnitVec3> pts(s.begin(), s.end());
  std::vector<bool> flip(s.size(), false);
  for (std::size_t k : subset) {
    if (k < 1 || k > s.size()) {
      throw std::out_of_range("antipodal exchange index " + std::to_string(k) +
                              " outside 1.." + std::to_string(s.size()));
    }
    flip[k - 1] = true;
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (flip[k]) pts[k] = -pts[k];
  }
  return PointSet(std::move(pts));
}

inline PointSet antipodal_exchange(const PointSet& s, std::initializer_list<std::size_t> subset) {
  return antipodal_exchange(s, std::span<const std::size_t>(subset.begin(), subset.size()));
}

/// Applies a 3x3 orthogonal map to every point.
/// Throws std::invalid_argument if q does not preserve unit norms.
inline PointSet transform(const PointSet& s, const Mat3& q) {
  std::vector<UnitVec3> pts;
  pts.reserve(s.size());
  for (const auto& p : s) pts.emplace_back(q * p.vec());
  return PointSet(std::move(pts));
}

/// Householder matrix I - 2 n n^T: reflection about the plane of normal n.
inline Mat3 plane_reflection(const UnitVec3& unit_normal) {
  return Mat3::Identity() - 2.0 * unit_normal.vec() * unit_normal.vec().transpose();
}

inline PointSet reflect_about_plane(const PointSet& s, const UnitVec3& unit_normal) {
  return transform(s, plane_reflection(unit_normal));
}

/// L = 2 e e^T - 1, the reflection about the line through the origin along
/// e. It is proper orthogonal: a rotation through pi about e.
inline Mat3 reflect_about_line(const UnitVec3& axis) {
  return 2.0 * axis.vec() * axis.vec().transpose() - Mat3::Identity();
}

/// Orthogonal projection e e^T p of p onto the line along e.
inline Vec3 project_onto_line(const Vec3& p, const UnitVec3& axis) {
  return axis.vec() * axis.vec().dot(p);
}

}  // namespace isowrist
