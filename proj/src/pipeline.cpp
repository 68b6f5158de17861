#include "prereq/pipeline.hpp"

namespace prereq {

PipelineArtifacts run_refinement(const Hierarchy& initial, const GradeMatrix& grades, const RunSettings& settings,
                                 const kernels::KernelTable& k) {
  settings.thresholds.validate();
  settings.decision.validate();

  PipelineArtifacts a;
  a.settings = settings;
  a.initial = &initial;
  a.delta = delta_grades(grades, initial, k);
  a.fuzzy = fuzzify(a.delta, settings.thresholds, k);
  a.averages = average_scores(a.fuzzy, k);
  a.decisions = decide_edges(a.averages, settings.decision);
  a.final_hierarchy = build_final_hierarchy(a.decisions, initial.skills());

  for (const auto& cycle : a.final_hierarchy.cycle_warnings) {
    std::string text = "final hierarchy has a cycle:";
    for (const auto& id : cycle) text += " " + id + " →";
    a.warnings.push_back(text + " " + cycle.front());
  }
  for (const auto& w : a.final_hierarchy.collision_warnings) a.warnings.push_back(w);
  return a;
}

}  // namespace prereq
