#pragma once

#include <string>
#include <vector>

#include "prereq/decision.hpp"
#include "prereq/fuzzy.hpp"
#include "prereq/grades.hpp"
#include "prereq/hierarchy.hpp"

namespace prereq {

inline constexpr const char* kReportSchema = "prereq-refiner/1";

struct RunSettings {
  Thresholds thresholds;
  DecisionConfig decision;
  double g_max = kDefaultGradeMax;
  MissingPolicy missing_policy = MissingPolicy::strict;
  int decimals = 2;
};

/// Everything a finished run produced. The report functions only read it.
struct PipelineArtifacts {
  RunSettings settings;
  const Hierarchy* initial = nullptr;
  DeltaMatrix delta;
  FuzzyScores fuzzy;
  EdgeAverages averages;
  std::vector<EdgeDecision> decisions;
  FinalHierarchy final_hierarchy;
  std::vector<std::string> warnings;
};

/// Half away from zero at `decimals` places.
double round_half_away(double value, int decimals);

/// Self-contained JSON with stable key order, 2-space indent, trailing
/// newline. Rounded values appear under the plain key and full-precision ones
/// under `<key>_raw`.
std::string render_report(const PipelineArtifacts& a);

struct DotOptions {
  int decimals = 2;
  bool include_deleted = false;  // draw deleted links dashed grey
};

std::string render_dot(const FinalHierarchy& f, const DotOptions& options = {});

struct TableSet {
  std::string delta;
  std::string fuzzy_cpr;
  std::string fuzzy_rpr;
  std::string averages;
  std::string decisions;
};

/// CSV analogues of the delta, fuzzy, average and decision tables. Columns
/// follow link order, rows learner order; the fuzzy tables end with an AVG
/// row. Absent cells and averages with effective_n 0 are written empty.
TableSet render_tables(const PipelineArtifacts& a);

}  // namespace prereq
