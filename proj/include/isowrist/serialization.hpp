// Text encodings of solutions, wrist catalogs, symmetry maps, postures and
// Platonic vertex sets: CSV, JSON (schema_version "1"), aligned tables and
// OBJ-style line geometry.
#pragma once

#include "isowrist/classification.hpp"
#include "isowrist/isotropy_solver.hpp"
#include "isowrist/sphere_geometry.hpp"
#include "isowrist/wrist_kinematics.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace isowrist {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kGeneratorName = "isowrist";

/// Shortest decimal that parses back to the same double.
inline std::string shortest_decimal(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Seventeen significant digits, enough to round-trip any double.
inline std::string decimal17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Exact form of values built from 1/3 and the radicals sqrt(2), sqrt(6);
/// other values fall back to their shortest decimal.
inline std::string exact_radical(double v, double tol = 1e-12) {
  struct Form {
    double value;
    std::string_view text;
  };
  const Form forms[] = {{0.0, "0"},
                        {1.0, "1"},
                        {1.0 / 3, "1/3"},
                        {std::sqrt(2.0) / 3, "sqrt(2)/3"},
                        {std::sqrt(6.0) / 3, "sqrt(6)/3"},
                        {2 * std::sqrt(2.0) / 3, "2*sqrt(2)/3"}};
  for (const auto& f : forms) {
    if (std::abs(std::abs(v) - f.value) <= tol) {
      if (f.value == 0.0) return "0";
      return (v < 0 ? "-" : "") + std::string(f.text);
    }
  }
  return shortest_decimal(v);
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// ---------------------------------------------------------------------------
// Solutions

inline std::string solutions_csv(std::vector<SolutionRecord> recs) {
  std::sort(recs.begin(), recs.end(),
            [](const auto& a, const auto& b) { return a.table_index < b.table_index; });
  std::string out = "#,c,s,x,y,z,u,v,w\n";
  for (const auto& r : recs) {
    out += std::to_string(r.table_index);
    for (double v : r.values.as_array()) out += "," + decimal17(v);
    out += "\n";
  }
  return out;
}

inline std::string solutions_table(std::vector<SolutionRecord> recs) {
  std::sort(recs.begin(), recs.end(),
            [](const auto& a, const auto& b) { return a.table_index < b.table_index; });
  std::ostringstream os;
  os << std::setw(4) << "#";
  for (auto name : kUnknownNames) os << std::setw(14) << name;
  os << "\n";
  for (const auto& r : recs) {
    os << std::setw(4) << r.table_index;
    for (double v : r.values.as_array()) os << std::setw(14) << exact_radical(v);
    os << "\n";
  }
  return os.str();
}

inline nlohmann::json solutions_json(std::vector<SolutionRecord> recs, double tolerance,
                                     const std::string& timestamp = utc_timestamp()) {
  std::sort(recs.begin(), recs.end(),
            [](const auto& a, const auto& b) { return a.table_index < b.table_index; });
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& r : recs) {
    nlohmann::json j;
    j["index"] = r.table_index;
    nlohmann::json exact;
    const auto vals = r.values.as_array();
    for (std::size_t k = 0; k < kUnknownCount; ++k) {
      j[std::string(kUnknownNames[k])] = vals[k];
      exact[std::string(kUnknownNames[k])] = exact_radical(vals[k]);
    }
    j["exact"] = exact;
    j["sign_pattern"] = r.pattern.signs;
    sols.push_back(std::move(j));
  }
  return {{"schema_version", kSchemaVersion},
          {"metadata",
           {{"generator", kGeneratorName}, {"tolerance", tolerance}, {"timestamp", timestamp}}},
          {"solutions", std::move(sols)}};
}

/// Reads a solution-set document back. Throws std::runtime_error on a
/// schema mismatch or when the indices are not a permutation of 1..32.
inline std::vector<SolutionRecord> parse_solutions_json(const nlohmann::json& doc) {
  if (doc.value("schema_version", "") != kSchemaVersion) {
    throw std::runtime_error("unsupported schema_version");
  }
  const auto& sols = doc.at("solutions");
  if (sols.size() != kSolutionCount) throw std::runtime_error("expected 32 solutions");
  std::vector<SolutionRecord> out;
  std::array<bool, kSolutionCount + 1> seen{};
  for (const auto& j : sols) {
    SolutionRecord r;
    r.table_index = j.at("index").get<int>();
    if (r.table_index < 1 || r.table_index > static_cast<int>(kSolutionCount) ||
        seen[static_cast<std::size_t>(r.table_index)]) {
      throw std::runtime_error("solution indices are not a permutation of 1..32");
    }
    seen[static_cast<std::size_t>(r.table_index)] = true;
    std::array<double, kUnknownCount> a{};
    for (std::size_t k = 0; k < kUnknownCount; ++k) a[k] = j.at(std::string(kUnknownNames[k])).get<double>();
    r.values = Unknowns::from_array(a);
    if (j.contains("sign_pattern")) r.pattern.signs = j["sign_pattern"].get<std::array<int, 5>>();
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wrist catalog and maps

inline std::string ordering_label(const AxisOrdering& o) {
  std::string s;
  for (std::size_t k : o) s += "P" + std::to_string(k + 1);
  return s;
}

/// Twist in degrees rounded to one decimal, as tabulated.
inline double display_degrees(double rad) { return std::round(rad_to_deg(rad) * 10.0) / 10.0; }

inline nlohmann::json wrist_class_json(const WristClass& w) {
  nlohmann::json twists = nlohmann::json::array();
  for (std::size_t i = 0; i < w.representative.twists.size(); ++i) {
    const double a = w.representative.twists[i];
    twists.push_back({{"index", i + 1},
                      {"degrees", rad_to_deg(a)},
                      {"display", display_degrees(a)},
                      {"cosine", exact_radical(std::cos(a))}});
  }
  twists.push_back({{"index", 4}, {"value", "undefined"}});

  nlohmann::json joints = nlohmann::json::array();
  for (std::size_t i = 0; i < w.representative.joints.size(); ++i) {
    const auto& j = w.representative.joints[i];
    if (j) {
      joints.push_back({{"index", i + 1}, {"degrees", rad_to_deg(*j)}, {"display", std::round(rad_to_deg(*j))}, {"sign", "+-"}});
    } else {
      joints.push_back({{"index", i + 1}, {"value", "free"}});
    }
  }

  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : w.members) {
    members.push_back({{"solution", m.solution_index}, {"ordering", ordering_label(m.ordering)}, {"sign", m.sign}});
  }
  return {{"label", std::string(1, w.label)},
          {"alpha_4", "undefined"},
          {"twists", std::move(twists)},
          {"joints", std::move(joints)},
          {"members", std::move(members)}};
}

inline nlohmann::json solution_map_json(const SolutionMap& m) {
  nlohmann::json j = {{"source", m.source_index}, {"operation", to_string(m.operation)}, {"target", m.target_index}};
  if (m.operation == MapOperation::antipodal) j["subset"] = subset_label(m.subset);
  return j;
}

inline nlohmann::json catalog_json(const std::vector<WristClass>& classes,
                                   const std::vector<SolutionMap>& antipodal,
                                   const std::vector<SolutionMap>& reflections,
                                   const std::vector<AntipodalColumn>& columns,
                                   const std::vector<CouplingCheck>& couplings,
                                   const std::string& timestamp = utc_timestamp()) {
  nlohmann::json cls = nlohmann::json::array();
  for (const auto& w : classes) cls.push_back(wrist_class_json(w));
  nlohmann::json am = nlohmann::json::array();
  for (const auto& m : antipodal) am.push_back(solution_map_json(m));
  nlohmann::json rm = nlohmann::json::array();
  for (const auto& m : reflections) rm.push_back(solution_map_json(m));
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : columns) {
    cols.push_back({{"published_header", c.published_header},
                    {"solution", c.published_target},
                    {"computed_subset", subset_label(c.computed_subset)},
                    {"header_consistent", c.header_consistent}});
  }
  nlohmann::json cp = nlohmann::json::array();
  for (const auto& c : couplings) {
    cp.push_back({{"label", std::string(1, c.label)},
                  {"coupled_isotropic", c.coupled_isotropic},
                  {"anticoupled_isotropic", c.anticoupled_isotropic}});
  }
  return {{"schema_version", kSchemaVersion},
          {"metadata", {{"generator", kGeneratorName}, {"timestamp", timestamp}}},
          {"classes", std::move(cls)},
          {"antipodal_maps", std::move(am)},
          {"antipodal_columns", std::move(cols)},
          {"reflection_maps", std::move(rm)},
          {"sign_coupling", std::move(cp)}};
}

inline std::string catalog_table(const std::vector<WristClass>& classes,
                                 const std::vector<SolutionMap>& antipodal,
                                 const std::vector<SolutionMap>& reflections,
                                 const std::vector<AntipodalColumn>& columns) {
  std::ostringstream os;
  os << "Distinct isotropic wrists: " << classes.size() << "\n";
  for (const auto& w : classes) {
    os << "(" << w.label << ")  alpha = (";
    for (std::size_t i = 0; i < w.representative.twists.size(); ++i) {
      os << (i ? ", " : "") << std::fixed << std::setprecision(1) << display_degrees(w.representative.twists[i]);
    }
    // Upper sign first: "+-60" is +60 or -60, "-+60" is -60 or +60.
    const auto pm = [](double rad) {
      const double d = std::round(rad_to_deg(rad));
      return std::string(d < 0 ? "-+" : "+-") + std::to_string(static_cast<int>(std::abs(d)));
    };
    os << ", *)  theta = (theta1, " << pm(*w.representative.joints[1]) << ", " << pm(*w.representative.joints[2])
       << ", theta4)  members = " << w.members.size() << "\n";
  }
  os << "\nAntipodal exchanges of solution " << kTrivialSolution << ":\n";
  for (const auto& m : antipodal) os << "  " << std::setw(7) << subset_label(m.subset) << " -> " << m.target_index << "\n";
  os << "Published column headers:\n";
  for (const auto& c : columns) {
    os << "  " << std::setw(7) << c.published_header << " (" << c.published_target << ") computed as "
       << subset_label(c.computed_subset) << (c.header_consistent ? "" : "  [header differs]") << "\n";
  }
  os << "\nReflections:\n";
  for (const auto& m : reflections) {
    os << "  solution " << std::setw(2) << m.source_index << ", " << std::setw(18) << std::left
       << to_string(m.operation) << std::right << " -> " << m.target_index << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Postures

inline nlohmann::json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

inline nlohmann::json posture_json(const PostureGeometry& g) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& e : g.axes) axes.push_back(vec_json(e.vec()));
  nlohmann::json frames = nlohmann::json::array();
  for (std::size_t i = 0; i < g.frames.size(); ++i) {
    frames.push_back({{"joint", i + 1},
                      {"origin", {0.0, 0.0, 0.0}},
                      {"x", vec_json(g.frames[i].x())},
                      {"y", vec_json(g.frames[i].y())},
                      {"z", vec_json(g.frames[i].z())}});
  }
  nlohmann::json joints = nlohmann::json::array();
  for (double a : g.joint_angles) joints.push_back(rad_to_deg(a));
  const auto& r = g.report;
  return {{"schema_version", kSchemaVersion},
          {"label", std::string(1, g.label)},
          {"joint_angles_deg", std::move(joints)},
          {"axes", std::move(axes)},
          {"frames", std::move(frames)},
          {"isotropy",
           {{"singular_values", r.singular_values},
            {"sigma", r.sigma},
            {"condition_number", std::isfinite(r.condition_number) ? nlohmann::json(r.condition_number)
                                                                   : nlohmann::json("inf")},
            {"is_isotropic", r.is_isotropic}}}};
}

/// "v x y z" vertices (origin first) and "l i j" segments from the origin to
/// each axis tip, 1-based as in Wavefront OBJ.
inline std::string posture_obj_lines(const PostureGeometry& g) {
  std::ostringstream os;
  os << "# isowrist posture " << g.label << "\n";
  os << "v 0 0 0\n";
  for (const auto& e : g.axes) {
    os << "v " << decimal17(e.x()) << " " << decimal17(e.y()) << " " << decimal17(e.z()) << "\n";
  }
  for (std::size_t k = 0; k < g.axes.size(); ++k) os << "l 1 " << k + 2 << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Platonic solids

inline constexpr std::string_view kPlatonicFootnote =
    "The tabulated value for each solid equals n/3, the triple eigenvalue of the second-moment "
    "tensor (sigma^2); the common singular value of the wrist Jacobian is sigma = sqrt(n/3).";

inline nlohmann::json platonic_json(PlatonicSolid kind) {
  const PointSet pts = platonic_vertices(kind);
  const auto iso = isotropy_of(second_moment(pts));
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& p : pts) verts.push_back(vec_json(p.vec()));
  return {{"schema_version", kSchemaVersion},
          {"kind", to_string(kind)},
          {"n", pts.size()},
          {"sigma_sq", iso.sigma_sq},
          {"sigma", std::sqrt(iso.sigma_sq)},
          {"isotropic", iso.isotropic},
          {"vertices", std::move(verts)},
          {"footnote", kPlatonicFootnote}};
}

inline std::string platonic_table(PlatonicSolid kind) {
  const PointSet pts = platonic_vertices(kind);
  const auto iso = isotropy_of(second_moment(pts));
  std::ostringstream os;
  os << to_string(kind) << "\n"
     << "n        = " << pts.size() << "\n"
     << "sigma^2  = " << decimal17(iso.sigma_sq) << "\n"
     << "sigma    = " << decimal17(std::sqrt(iso.sigma_sq)) << "\n"
     << "vertices:\n";
  for (const auto& p : pts) {
    os << "  " << std::setw(14) << exact_radical(p.x()) << std::setw(14) << exact_radical(p.y())
       << std::setw(14) << exact_radical(p.z()) << "\n";
  }
  os << "note: " << kPlatonicFootnote << "\n";
  return os.str();
}

}  // namespace isowrist
