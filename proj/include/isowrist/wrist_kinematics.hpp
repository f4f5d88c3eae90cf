// n-revolute spherical wrists: Jacobian, isotropy, condition number and
// the Denavit-Hartenberg description of a chain of intersecting axes.
//
// DH convention used throughout:
//   e_1 = [1, 0, 0],  n_1 = Rot(e_1, theta_1) [0, 0, 1],
//   e_{i+1} = cos(alpha_i) e_i + sin(alpha_i) (n_i x e_i),
//   n_{i+1} = Rot(e_{i+1}, theta_{i+1}) n_i,
// where n_i = unit(e_i x e_{i+1}) is the common normal of axes i and i+1 and
// angles are signed by the right-hand rule about the joint axis.
#pragma once

#include "isowrist/sphere_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace isowrist {

/// Smallest accepted angle between consecutive axes (and its distance to pi).
inline constexpr double kDegenerateTwist = 1e-9;

/// Relative threshold below which the smallest singular value counts as zero.
inline constexpr double kRankThreshold = 1e-12;

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

inline Mat3 axis_rotation(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

/// 3 x n matrix whose k-th column is the k-th joint axis.
class Jacobian {
 public:
  explicit Jacobian(Eigen::Matrix<double, 3, Eigen::Dynamic> m) : m_(std::move(m)) {}

  std::size_t joint_count() const { return static_cast<std::size_t>(m_.cols()); }
  const Eigen::Matrix<double, 3, Eigen::Dynamic>& matrix() const { return m_; }

 private:
  Eigen::Matrix<double, 3, Eigen::Dynamic> m_;
};

inline Jacobian jacobian_from_axes(const PointSet& axes) {
  if (axes.empty()) throw std::invalid_argument("empty point set");
  Eigen::Matrix<double, 3, Eigen::Dynamic> m(3, static_cast<Eigen::Index>(axes.size()));
  for (std::size_t k = 0; k < axes.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = axes[k].vec();
  return Jacobian(std::move(m));
}

/// omega = J * theta_dot, rates in rad/s.
inline Vec3 angular_velocity(const Jacobian& j, std::span<const double> joint_rates) {
  if (joint_rates.size() != j.joint_count()) {
    throw std::invalid_argument("joint-rate vector length does not match the joint count");
  }
  const Eigen::Map<const Eigen::VectorXd> rates(joint_rates.data(),
                                                static_cast<Eigen::Index>(joint_rates.size()));
  return j.matrix() * rates;
}

struct IsotropyReport {
  /// Descending; padded with zeros when fewer than three joints.
  std::array<double, 3> singular_values{};
  /// sqrt(trace(J J^T) / 3); the common singular value when isotropic.
  double sigma = 0.0;
  /// sigma_max / sigma_min, +infinity at rank deficiency.
  double condition_number = std::numeric_limits<double>::infinity();
  bool is_isotropic = false;
};

inline IsotropyReport isotropy_report(const Jacobian& j, double tol = kIsotropyTolerance) {
  IsotropyReport r;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j.matrix());
  const auto& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size() && k < 3; ++k) r.singular_values[static_cast<std::size_t>(k)] = sv(k);

  const double smax = r.singular_values[0];
  const double smin = r.singular_values[2];
  r.sigma = std::sqrt(j.matrix().squaredNorm() / 3.0);
  if (smin > kRankThreshold * std::max(1.0, smax)) r.condition_number = smax / smin;
  r.is_isotropic = std::isfinite(r.condition_number) && (smax - smin) <= tol && smin > tol;
  return r;
}

/// Twists alpha_1..alpha_{n-1} (alpha_n is undefined for a wrist) and
/// joint angles theta_1..theta_n in radians. An empty joint value marks a
/// free angle, which is how theta_1 and theta_n are reported.
struct DHChain {
  std::vector<double> twists;
  std::vector<std::optional<double>> joints;

  std::size_t joint_count() const { return joints.size(); }

  std::vector<double> twist_cosines() const {
    std::vector<double> c;
    c.reserve(twists.size());
    for (double a : twists) c.push_back(std::cos(a));
    return c;
  }
};

/// Frame of joint i: z along e_i, x along the common normal n_i toward the
/// next axis (for the last joint, n_{n-1} turned by theta_n about e_n).
struct JointFrame {
  Mat3 rotation = Mat3::Identity();

  Vec3 x() const { return rotation.col(0); }
  Vec3 y() const { return rotation.col(1); }
  Vec3 z() const { return rotation.col(2); }
};

namespace detail {

inline void check_chain(const DHChain& dh, std::span<const double> theta) {
  if (dh.joints.empty() || dh.twists.size() + 1 != dh.joints.size()) {
    throw std::invalid_argument("DH chain needs n joints and n-1 twists");
  }
  if (theta.size() != dh.joint_count()) {
    throw std::invalid_argument("joint-angle vector length does not match the joint count");
  }
  for (double a : dh.twists) {
    if (!(a >= kDegenerateTwist && a <= std::numbers::pi - kDegenerateTwist)) {
      throw std::domain_error("degenerate twist");
    }
  }
}

}  // namespace detail

inline std::vector<JointFrame> forward_frames(const DHChain& dh, std::span<const double> theta) {
  detail::check_chain(dh, theta);
  const std::size_t n = dh.joint_count();
  std::vector<JointFrame> frames(n);

  Vec3 e = Vec3::UnitX();
  Vec3 normal = axis_rotation(e, theta[0]) * Vec3::UnitZ();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const double a = dh.twists[i - 1];
      e = (std::cos(a) * e + std::sin(a) * normal.cross(e)).normalized();
      normal = axis_rotation(e, theta[i]) * normal;
    }
    frames[i].rotation.col(0) = normal;
    frames[i].rotation.col(1) = e.cross(normal);
    frames[i].rotation.col(2) = e;
  }
  return frames;
}

/// Axis directions e_1..e_n in the base frame. Free angles must be supplied.
inline PointSet forward_axes(const DHChain& dh, std::span<const double> theta) {
  std::vector<UnitVec3> axes;
  for (const auto& f : forward_frames(dh, theta)) axes.push_back(UnitVec3::normalized(f.z()));
  return PointSet(std::move(axes));
}

inline PointSet forward_axes(const DHChain& dh, std::initializer_list<double> theta) {
  return forward_axes(dh, std::span<const double>(theta.begin(), theta.size()));
}

inline DHChain dh_from_axes(const PointSet& axes) {
  const std::size_t n = axes.size();
  if (n < 2) throw std::invalid_argument("a DH chain needs at least two axes");

  DHChain dh;
  std::vector<Vec3> normals;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vec3& a = axes[i].vec();
    const Vec3& b = axes[i + 1].vec();
    const Vec3 cross = a.cross(b);
    // atan2 keeps full precision near 0 and pi where acos does not.
    const double twist = std::atan2(cross.norm(), a.dot(b));
    if (twist < kDegenerateTwist || twist > std::numbers::pi - kDegenerateTwist) {
      throw std::domain_error("degenerate twist");
    }
    dh.twists.push_back(twist);
    normals.push_back(cross.normalized());
  }

  dh.joints.assign(n, std::nullopt);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Vec3& prev = normals[i - 1];
    const Vec3& next = normals[i];
    dh.joints[i] = std::atan2(axes[i].vec().dot(prev.cross(next)), prev.dot(next));
  }
  return dh;
}

}  // namespace isowrist
