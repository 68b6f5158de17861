#pragma once

#include "prereq/report.hpp"

namespace prereq {

/// delta → fuzzify → average → decide → assemble. The returned artifacts
/// point at `initial`, which must outlive them.
PipelineArtifacts run_refinement(const Hierarchy& initial, const GradeMatrix& grades, const RunSettings& settings,
                                 const kernels::KernelTable& k = kernels::active());

}  // namespace prereq
