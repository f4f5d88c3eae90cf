// The eight-quadratic isotropy system of a four-axis wrist with
//   e_1 = [1,0,0], e_2 = [c,s,0], e_3 = [x,y,z], e_4 = [u,v,w]
// and sigma^2 = 4/3: closed-form enumeration of its 32 real roots, the
// reference table of those roots, and a multi-start Newton oracle that
// searches for roots independently of the elimination.
#pragma once

#include "isowrist/sphere_geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace isowrist {

/// Raised when computed data fails to line up with the reference tables.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::size_t kUnknownCount = 8;
inline constexpr std::size_t kSolutionCount = 32;
/// Product of the degrees of eight quadratics.
inline constexpr std::size_t kBezoutNumber = std::size_t{1} << kUnknownCount;
/// Mixed-volume root bound of the system; quoted, not recomputed here.
inline constexpr std::size_t kBkkBound = 192;

/// Max-norm radius within which two roots are the same root.
inline constexpr double kRecordMatchTolerance = 1e-12;

inline constexpr std::array<std::string_view, kUnknownCount> kUnknownNames = {"c", "s", "x", "y",
                                                                               "z", "u", "v", "w"};

struct Unknowns {
  double c = 0, s = 0, x = 0, y = 0, z = 0, u = 0, v = 0, w = 0;

  std::array<double, kUnknownCount> as_array() const { return {c, s, x, y, z, u, v, w}; }

  static Unknowns from_array(const std::array<double, kUnknownCount>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]};
  }

  friend bool operator==(const Unknowns&, const Unknowns&) = default;
};

inline double max_distance(const Unknowns& a, const Unknowns& b) {
  const auto x = a.as_array(), y = b.as_array();
  double d = 0;
  for (std::size_t k = 0; k < kUnknownCount; ++k) d = std::max(d, std::abs(x[k] - y[k]));
  return d;
}

/// The four axes induced by a tuple. Throws if the tuple does not describe
/// unit vectors.
inline PointSet axes_of(const Unknowns& t) {
  return {UnitVec3(1.0, 0.0, 0.0), UnitVec3(t.c, t.s, 0.0), UnitVec3(t.x, t.y, t.z),
          UnitVec3(t.u, t.v, t.w)};
}

/// Inverse of axes_of; requires e_1 = [1,0,0] and e_2 in the x-y plane.
inline std::optional<Unknowns> unknowns_of(const PointSet& axes, double tol = kRecordMatchTolerance) {
  if (axes.size() != 4) return std::nullopt;
  if ((axes[0].vec() - Vec3::UnitX()).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  if (std::abs(axes[1].z()) > tol) return std::nullopt;
  return Unknowns{axes[1].x(), axes[1].y(), axes[2].x(), axes[2].y(),
                  axes[2].z(), axes[3].x(), axes[3].y(), axes[3].z()};
}

using ResidualVector = std::array<double, kUnknownCount>;

/// Left-hand side minus right-hand side of the eight equations: the three
/// diagonal and three off-diagonal isotropy conditions, then the
/// normality of e_2 and e_3.
inline ResidualVector residuals(const Unknowns& t) {
  const auto& [c, s, x, y, z, u, v, w] = t;
  return {1 + c * c + x * x + u * u - 4.0 / 3.0,
          s * s + y * y + v * v - 4.0 / 3.0,
          z * z + w * w - 4.0 / 3.0,
          c * s + x * y + u * v,
          z * y + w * v,
          x * z + u * w,
          c * c + s * s - 1,
          x * x + y * y + z * z - 1};
}

inline double max_abs(const ResidualVector& r) {
  double m = 0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

/// d residuals / d (c, s, x, y, z, u, v, w).
inline Eigen::Matrix<double, 8, 8> residual_jacobian(const Unknowns& t) {
  const auto& [c, s, x, y, z, u, v, w] = t;
  Eigen::Matrix<double, 8, 8> j;
  // clang-format off
  j << 2*c, 0,   2*x, 0,   0,   2*u, 0,   0,
       0,   2*s, 0,   2*y, 0,   0,   2*v, 0,
       0,   0,   0,   0,   2*z, 0,   0,   2*w,
       s,   c,   y,   x,   0,   v,   u,   0,
       0,   0,   0,   z,   y,   0,   w,   v,
       0,   0,   z,   0,   x,   w,   0,   u,
       2*c, 2*s, 0,   0,   0,   0,   0,   0,
       0,   0,   2*x, 2*y, 2*z, 0,   0,   0;
  // clang-format on
  return j;
}

/// One choice of the five square-root branches (s_u, s_z, s_v, s_s, s_w).
struct SignPattern {
  std::array<int, 5> signs{1, 1, 1, 1, 1};

  int su() const { return signs[0]; }
  int sz() const { return signs[1]; }
  int sv() const { return signs[2]; }
  int ss() const { return signs[3]; }
  int sw() const { return signs[4]; }

  /// Bit 4 (most significant) is s_u, bit 0 is s_w; a set bit means -1.
  static SignPattern from_index(std::size_t index) {
    if (index >= kSolutionCount) throw std::out_of_range("sign pattern index must be < 32");
    SignPattern p;
    for (std::size_t k = 0; k < 5; ++k) p.signs[k] = ((index >> (4 - k)) & 1U) ? -1 : 1;
    return p;
  }

  std::size_t index() const {
    std::size_t i = 0;
    for (int s : signs) i = (i << 1) | (s < 0 ? 1U : 0U);
    return i;
  }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

struct SolutionRecord {
  Unknowns values;
  SignPattern pattern;
  /// 1..32 once matched against the reference table, 0 before.
  int table_index = 0;

  PointSet axes() const { return axes_of(values); }
};

/// Back-substitution for one branch: u, z, v, s, w in closed form, then x, y
/// and c from the three off-diagonal conditions.
inline SolutionRecord solve_closed_form(const SignPattern& p) {
  const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  Unknowns t;
  t.u = p.su() / 3.0;
  t.z = p.sz() * r6 * t.u;
  t.v = p.sv() * r2 * t.u;
  t.s = p.ss() * 2.0 * r2 / 3.0;
  t.w = p.sw() * std::sqrt(6.0 * (2.0 - 9.0 * t.u * t.u)) / 3.0;
  if (std::abs(t.z) < 0.1 || std::abs(t.s) < 0.1) {
    throw ConsistencyError("closed form divides by a vanishing z or s");
  }
  t.x = -t.w * t.u / t.z;
  t.y = -t.v * t.w / t.z;
  t.c = t.u * (t.w * t.y - t.v * t.z) / (t.s * t.z);
  return {t, p, 0};
}

/// Per-column magnitudes of the reference table entries.
inline std::array<double, kUnknownCount> reference_magnitudes() {
  const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
  return {1.0 / 3, 2 * r2 / 3, 1.0 / 3, r2 / 3, r6 / 3, 1.0 / 3, r2 / 3, r6 / 3};
}

/// The 32 isotropic four-point sets as published, rows 1..32. Every entry
/// is +-1/3, +-sqrt(2)/3, +-sqrt(6)/3 or +-2 sqrt(2)/3 and the magnitude
/// depends only on the column, so a row is its sign string over (c..w).
inline const std::array<Unknowns, kSolutionCount>& reference_table() {
  static const std::array<Unknowns, kSolutionCount> table = [] {
    constexpr std::array<std::string_view, kSolutionCount> rows = {
        "+---++++", "+---+---", "+----++-", "+------+",  // 1-4
        "+-+++++-", "+-+++--+", "+-++-+++", "+-++----",  // 5-8
        "++-+++-+", "++-++-+-", "++-+-+--", "++-+--++",  // 9-12
        "+++-++--", "+++-+-++", "+++--+-+", "+++---+-",  // 13-16
        "---+++-+", "---++-+-", "---+--++", "---+-+--",  // 17-20
        "--+-++--", "--+-+-++", "--+---+-", "--+--+-+",  // 21-24
        "-+---++-", "-+-----+", "-+--+---", "-+--++++",  // 25-28
        "-+++----", "-+++-+++", "-++++--+", "-++++++-"  // 29-32
    };
    const auto mag = reference_magnitudes();
    std::array<Unknowns, kSolutionCount> out{};
    for (std::size_t r = 0; r < kSolutionCount; ++r) {
      std::array<double, kUnknownCount> a{};
      for (std::size_t k = 0; k < kUnknownCount; ++k) a[k] = (rows[r][k] == '-' ? -1.0 : 1.0) * mag[k];
      out[r] = Unknowns::from_array(a);
    }
    return out;
  }();
  return table;
}

/// Index 1..32 of the reference row within tol of t, or 0.
inline int match_table_index(const Unknowns& t, double tol = kRecordMatchTolerance) {
  const auto& table = reference_table();
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (max_distance(t, table[r]) <= tol) return static_cast<int>(r + 1);
  }
  return 0;
}

/// Matches an axis set (e_1 on x, e_2 in the x-y plane) against the table.
inline int match_table_index(const PointSet& axes, double tol = kRecordMatchTolerance) {
  const auto t = unknowns_of(axes, tol);
  return t ? match_table_index(*t, tol) : 0;
}

/// All 32 branches in pattern order, each tagged with its table row.
/// Throws ConsistencyError unless the tagging is a bijection onto 1..32.
inline std::vector<SolutionRecord> enumerate_solutions() {
  std::vector<SolutionRecord> out;
  out.reserve(kSolutionCount);
  std::array<bool, kSolutionCount + 1> seen{};
  for (std::size_t i = 0; i < kSolutionCount; ++i) {
    auto rec = solve_closed_form(SignPattern::from_index(i));
    rec.table_index = match_table_index(rec.values);
    if (rec.table_index == 0) {
      throw ConsistencyError("branch " + std::to_string(i) + " matches no reference row");
    }
    if (seen[static_cast<std::size_t>(rec.table_index)]) {
      throw ConsistencyError("reference row " + std::to_string(rec.table_index) + " matched twice");
    }
    seen[static_cast<std::size_t>(rec.table_index)] = true;
    out.push_back(rec);
  }
  return out;
}

/// The enumerated records ordered by table row (element k is row k+1).
inline std::vector<SolutionRecord> solutions_by_table_index() {
  auto recs = enumerate_solutions();
  std::sort(recs.begin(), recs.end(),
            [](const auto& a, const auto& b) { return a.table_index < b.table_index; });
  return recs;
}

/// No unknown vanishes: every |component| is at least 1/3 (up to rounding).
inline bool verify_nonvanishing(const Unknowns& t) {
  double m = INFINITY;
  for (double v : t.as_array()) m = std::min(m, std::abs(v));
  return m >= 1.0 / 3.0 - 1e-9;
}

// ---------------------------------------------------------------------------
// Multi-start Newton oracle

struct NewtonOptions {
  int max_iterations = 100;
  /// Converged once the Euclidean residual norm drops below this.
  double residual_tolerance = 1e-10;
  double min_step = 1.0 / 1024.0;
};

struct NewtonResult {
  std::optional<Unknowns> root;
  int iterations = 0;
};

inline Eigen::Matrix<double, 8, 1> residual_column(const Unknowns& t) {
  const auto r = residuals(t);
  return Eigen::Map<const Eigen::Matrix<double, 8, 1>>(r.data());
}

/// Damped Newton with backtracking on the residual norm. Returns no root
/// when the Jacobian is singular, the step stalls, or the iteration limit
/// is reached.
inline NewtonResult newton_solve(const Unknowns& start, const NewtonOptions& opt = {}) {
  NewtonResult out;
  auto x = start.as_array();
  Eigen::Map<Eigen::Matrix<double, 8, 1>> xv(x.data());
  double norm = residual_column(Unknowns::from_array(x)).norm();

  for (int it = 0;; ++it) {
    if (norm < opt.residual_tolerance) {
      out.root = Unknowns::from_array(x);
      out.iterations = it;
      return out;
    }
    if (it >= opt.max_iterations || !std::isfinite(norm)) break;

    const Unknowns cur = Unknowns::from_array(x);
    Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(residual_jacobian(cur));
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) break;
    const Eigen::Matrix<double, 8, 1> step = -lu.solve(residual_column(cur));

    double t = 1.0;
    bool accepted = false;
    const Eigen::Matrix<double, 8, 1> base = xv;
    while (t >= opt.min_step) {
      xv = base + t * step;
      const double trial = residual_column(Unknowns::from_array(x)).norm();
      if (trial < (1.0 - 1e-4 * t) * norm) {
        norm = trial;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  out.iterations = opt.max_iterations;
  return out;
}

struct OracleOptions {
  double box = 1.5;
  double cluster_radius = 1e-6;
  NewtonOptions newton{};
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct OracleReport {
  /// Cluster representatives, sorted lexicographically over (c..w).
  std::vector<Unknowns> roots;
  std::size_t starts = 0;
  std::size_t converged = 0;
  std::size_t discarded = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Start number `index` of a hunt seeded with `seed`; independent of how
/// starts are split across workers.
inline Unknowns random_start(std::uint64_t seed, std::uint64_t index, double box) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
  std::uniform_real_distribution<double> dist(-box, box);
  std::array<double, kUnknownCount> a{};
  for (auto& v : a) v = dist(rng);
  return Unknowns::from_array(a);
}

}  // namespace detail

/// Clusters roots within `radius` (max norm) and sorts the representatives.
inline std::vector<Unknowns> cluster_roots(const std::vector<Unknowns>& roots, double radius) {
  std::vector<Unknowns> reps;
  for (const auto& r : roots) {
    const bool known = std::any_of(reps.begin(), reps.end(),
                                   [&](const Unknowns& q) { return max_distance(q, r) <= radius; });
    if (!known) reps.push_back(r);
  }
  std::sort(reps.begin(), reps.end(),
            [](const Unknowns& a, const Unknowns& b) { return a.as_array() < b.as_array(); });
  return reps;
}

/// Runs Newton from `n_starts` uniform starts in [-box, box]^8 and returns
/// the distinct roots reached. Deterministic for a given seed regardless of
/// the thread count.
inline OracleReport oracle_root_hunt(std::size_t n_starts, std::uint64_t seed,
                                     const OracleOptions& opt = {}) {
  OracleReport report;
  report.starts = n_starts;
  std::vector<std::optional<Unknowns>> found(n_starts);

  unsigned workers = opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n_starts, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n_starts; i += workers) {
          found[i] = newton_solve(detail::random_start(seed, i, opt.box), opt.newton).root;
        }
      });
    }
  }

  std::vector<Unknowns> converged;
  for (const auto& f : found) {
    if (f) converged.push_back(*f);
  }
  report.converged = converged.size();
  report.discarded = n_starts - converged.size();
  report.roots = cluster_roots(converged, opt.cluster_radius);
  return report;
}

}  // namespace isowrist
