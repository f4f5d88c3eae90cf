// Command-line front end: enumerate, classify, verify, posture, platonic.
// Exit codes: 0 success, 1 verification or consistency failure, 2 usage.
#pragma once

#include "isowrist/classification.hpp"
#include "isowrist/serialization.hpp"
#include "isowrist/verification.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

namespace isowrist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Relative output paths are resolved against this directory when set.
inline constexpr const char* kOutputDirEnv = "ISOWRIST_OUTPUT_DIR";

struct Options {
  std::string format;
  double tolerance = 1e-12;
  std::uint64_t seed = 1;
  std::size_t oracle_starts = 20000;
  std::string output;

  std::string posture_class = "a";
  double theta1_deg = 0.0;
  double theta4_deg = 0.0;
  std::string platonic_kind;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string pick_format(const std::string& given, std::string_view fallback,
                               std::initializer_list<std::string_view> allowed) {
  const std::string f = given.empty() ? std::string(fallback) : given;
  for (auto a : allowed) {
    if (a == f) return f;
  }
  std::string msg = "unknown format '" + f + "' (expected one of:";
  for (auto a : allowed) msg += " " + std::string(a);
  throw UsageError(msg + ")");
}

inline const WristClass& find_class(const std::vector<WristClass>& classes, const std::string& label) {
  for (const auto& w : classes) {
    if (label.size() == 1 && w.label == label[0]) return w;
  }
  throw UsageError("unknown wrist class '" + label + "' (expected a..h)");
}

}  // namespace detail

inline int cmd_enumerate(const Options& o, std::ostream& out) {
  const auto fmt = detail::pick_format(o.format, "table", {"table", "json", "csv"});
  const auto sols = enumerate_solutions();
  if (fmt == "csv") out << solutions_csv(sols);
  else if (fmt == "json") out << solutions_json(sols, o.tolerance).dump(2) << "\n";
  else out << solutions_table(sols);
  return kExitOk;
}

inline int cmd_classify(const Options& o, std::ostream& out) {
  const auto fmt = detail::pick_format(o.format, "table", {"table", "json"});
  const auto sols = solutions_by_table_index();
  const auto classes = distinct_wrists();
  const auto antipodal = antipodal_map_table(sols);
  const auto reflections = reflection_map_table(sols);
  const auto columns = resolve_antipodal_columns(antipodal);
  if (fmt == "json") {
    std::vector<CouplingCheck> couplings;
    for (const auto& ref : kReferenceWrists) couplings.push_back(check_sign_coupling(ref));
    out << catalog_json(classes, antipodal, reflections, columns, couplings).dump(2) << "\n";
  } else {
    out << catalog_table(classes, antipodal, reflections, columns);
  }
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  if (!(o.tolerance > 0)) throw UsageError("tolerance must be positive");
  const auto report = run_verification({o.tolerance, o.oracle_starts, o.seed});
  for (const auto& c : report.checks) {
    out << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(32) << c.name
        << std::right;
    if (!c.skipped) out << " worst=" << std::setprecision(3) << std::scientific << c.worst << " bound=" << c.bound;
    out << std::defaultfloat;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
  const bool ok = report.all_passed();
  out << (ok ? "all checks passed" : "verification FAILED") << "\n";
  return ok ? kExitOk : kExitFailure;
}

inline int cmd_posture(const Options& o, std::ostream& out) {
  const auto fmt = detail::pick_format(o.format, "json", {"json", "obj-lines"});
  const auto classes = distinct_wrists();
  const auto& w = detail::find_class(classes, o.posture_class);
  const auto g = isotropic_posture_geometry(w, deg_to_rad(std::fmod(o.theta1_deg, 360.0)),
                                            deg_to_rad(std::fmod(o.theta4_deg, 360.0)));
  if (fmt == "json") out << posture_json(g).dump(2) << "\n";
  else out << posture_obj_lines(g);
  return kExitOk;
}

inline int cmd_platonic(const Options& o, std::ostream& out) {
  const auto fmt = detail::pick_format(o.format, "table", {"table", "json"});
  PlatonicSolid kind;
  try {
    kind = parse_platonic(o.platonic_kind);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (fmt == "json") out << platonic_json(kind).dump(2) << "\n";
  else out << platonic_table(kind);
  return kExitOk;
}

inline std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

/// Parses `args` (without the program name) and runs the selected command.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enumerate, verify and classify isotropic four-revolute spherical wrists", "isowrist"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format (command dependent)");
  app.add_option("--tolerance", o.tolerance, "Numeric tolerance for verify")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed of the oracle root hunt")->capture_default_str();
  app.add_option("--oracle-starts", o.oracle_starts, "Newton starts of the oracle (0 skips it)")
      ->capture_default_str();
  app.add_option("--output", o.output, "Write to this file instead of stdout");

  auto* enumerate = app.add_subcommand("enumerate", "List the 32 isotropic four-point sets (table|json|csv)");
  auto* classify = app.add_subcommand("classify", "Group solutions into the distinct wrists (table|json)");
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  auto* posture = app.add_subcommand("posture", "Isotropic posture geometry of one wrist (json|obj-lines)");
  posture->add_option("--class", o.posture_class, "Wrist label a..h")->capture_default_str();
  posture->add_option("--theta1", o.theta1_deg, "Free angle theta_1 in degrees")->capture_default_str();
  posture->add_option("--theta4", o.theta4_deg, "Free angle theta_4 in degrees")->capture_default_str();
  auto* platonic = app.add_subcommand("platonic", "Vertex set and sigma of a Platonic solid (table|json)");
  platonic->add_option("kind", o.platonic_kind, "tetrahedron|cube|octahedron|icosahedron|dodecahedron")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    const auto path = resolve_output(o.output);
    file.open(path);
    if (!file) {
      err << "cannot open output file " << path << "\n";
      return kExitUsage;
    }
    sink = &file;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(o, *sink);
    if (classify->parsed()) return cmd_classify(o, *sink);
    if (verify->parsed()) return cmd_verify(o, *sink);
    if (posture->parsed()) return cmd_posture(o, *sink);
    if (platonic->parsed()) return cmd_platonic(o, *sink);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace isowrist::cli
