#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "prereq/grades.hpp"
#include "prereq/hierarchy.hpp"
#include "prereq/kernels.hpp"
#include "prereq/membership.hpp"

namespace prereq {

/// Per-learner grade variation along each link, learners × links.
struct DeltaMatrix {
  std::vector<std::string> learners;
  std::vector<Edge> links;
  std::vector<double> values;         // absent cells hold 0
  std::vector<std::uint8_t> present;  // 0 where either endpoint grade is absent

  double at(std::size_t learner, std::size_t link) const { return values[learner * links.size() + link]; }
  bool has(std::size_t learner, std::size_t link) const { return present[learner * links.size() + link] != 0; }
};

/// Per-learner μ_CPR and μ_RPR, laid out like the DeltaMatrix it came from.
struct FuzzyScores {
  std::vector<std::string> learners;
  std::vector<Edge> links;
  std::vector<double> cpr;
  std::vector<double> rpr;
  std::vector<std::uint8_t> present;

  double cpr_at(std::size_t learner, std::size_t link) const { return cpr[learner * links.size() + link]; }
  double rpr_at(std::size_t learner, std::size_t link) const { return rpr[learner * links.size() + link]; }
  bool has(std::size_t learner, std::size_t link) const { return present[learner * links.size() + link] != 0; }
};

struct EdgeAverages {
  std::vector<Edge> links;
  std::vector<double> avg_cpr;
  std::vector<double> avg_rpr;
  std::vector<std::size_t> effective_n;
};

/// Δ = grade(to) − grade(from) for every learner and every edge of `h`, in
/// edges_of order. Grades are matched to skills by id, so column order in
/// `m` does not matter, but the skill sets must be equal.
DeltaMatrix delta_grades(const GradeMatrix& m, const Hierarchy& h,
                         const kernels::KernelTable& k = kernels::active());

FuzzyScores fuzzify(const DeltaMatrix& d, const Thresholds& t, const kernels::KernelTable& k = kernels::active());

/// Means over contributing learners. Throws prereq::Error (stage "fuzzy")
/// when a link has no contributing learner.
EdgeAverages average_scores(const FuzzyScores& f, const kernels::KernelTable& k = kernels::active());

}  // namespace prereq
