#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prereq/report.hpp"
#include "prereq/simulator.hpp"

namespace prereq::cli {

enum class Command { refine, simulate, validate };

struct Formats {
  bool json = true;
  bool dot = true;
  bool csv = true;
};

struct Config {
  Command command = Command::refine;
  std::filesystem::path hierarchy_path;
  std::filesystem::path grades_path;
  std::filesystem::path output_dir = "out";
  bool output_dir_given = false;
  RunSettings settings;
  Formats formats;
  bool include_deleted = false;

  // simulate
  std::optional<std::filesystem::path> cohort_path;
  std::optional<std::uint64_t> seed;
  std::vector<Edge> reverse;
};

/// Thrown by parse_config for --help; carries the usage text.
struct HelpRequested {
  std::string text;
};

using Environment = std::map<std::string, std::string>;

/// Snapshot of the PREREQ_* variables in the process environment.
Environment process_environment();

/// `args` excludes the program name. Precedence: flags, then PREREQ_<FLAG>
/// variables, then defaults. Throws prereq::Error (stage "config") whose
/// message names the offending flag.
Config parse_config(const std::vector<std::string>& args, const Environment& env = {});

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitWarnings = 2;

/// Runs the refinement and writes the selected outputs into output_dir.
int run_pipeline(const Config& c, std::ostream& diag);

/// Loads inputs and reports what it found, without writing anything.
int run_validate(const Config& c, std::ostream& out, std::ostream& diag);

/// Generates a cohort from the truth hierarchy, flips `reverse`, refines, and
/// prints recovery JSON on `out` (also written to output_dir).
int run_simulation(const Config& c, std::ostream& out, std::ostream& diag);

/// Parses and dispatches; never throws.
int main_entry(const std::vector<std::string>& args, const Environment& env, std::ostream& out, std::ostream& diag);

std::string recovery_to_json(const CohortSpec& spec, const std::vector<Edge>& reversed, const RecoveryStats& stats,
                             const std::vector<EdgeDecision>& decisions);

}  // namespace prereq::cli
