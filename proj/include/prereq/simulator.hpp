#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prereq/decision.hpp"
#include "prereq/grades.hpp"
#include "prereq/hierarchy.hpp"
#include "prereq/membership.hpp"

namespace prereq {

struct CohortSpec {
  std::size_t n_learners = 100;
  double noise_spread = 2.0;  // half-width of the uniform noise, grade units
  double base_low = 6.0;
  double base_high = 14.0;
  std::uint64_t seed = 1;

  void validate(double g_max) const;
};

CohortSpec parse_cohort_spec(const std::string& json_text);
std::string cohort_spec_to_json(const CohortSpec& spec);

/// Roots draw a base grade uniform in [base_low, base_high]; every other skill
/// gets min over its prerequisites plus uniform noise in ±noise_spread,
/// clamped to [0, g_max]. Each learner has its own derived stream, so the
/// result does not depend on generation order. Learner ids are L1..Ln.
GradeMatrix generate_cohort(const Hierarchy& truth, const CohortSpec& spec, const Thresholds& t,
                            double g_max = kDefaultGradeMax);

/// Flips every edge in `reverse`. Throws prereq::Error (stage "simulator")
/// when an edge is not in `truth` or the result has a cycle.
Hierarchy perturb_hierarchy(const Hierarchy& truth, const std::vector<Edge>& reverse);

/// Picks `count` edges (or fewer if not enough exist) whose joint reversal
/// keeps the hierarchy acyclic. Deterministic for a fixed seed.
std::vector<Edge> choose_reversible_edges(const Hierarchy& truth, std::size_t count, std::uint64_t seed);

/// Expected verdict for each link of an expert hierarchy.
using TruthVerdicts = std::vector<std::pair<Edge, Verdict>>;

/// KEPT for every edge the expert oriented correctly, REVERSED for those in
/// `reversed` (given in truth orientation).
TruthVerdicts expected_verdicts(const Hierarchy& expert, const std::vector<Edge>& reversed);

struct RecoveryStats {
  // confusion[truth][predicted], indexed by Verdict
  std::array<std::array<std::size_t, 3>, 3> confusion{};
  std::array<double, 3> precision{};  // NaN when the verdict was never predicted
  std::array<double, 3> recall{};     // NaN when the verdict never occurs in truth
  double accuracy = 0.0;
  std::size_t evaluated = 0;
};

RecoveryStats evaluate_recovery(const TruthVerdicts& truth, const std::vector<EdgeDecision>& predicted);

}  // namespace prereq
