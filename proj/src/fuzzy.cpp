#include "prereq/fuzzy.hpp"

#include "prereq/csv.hpp"
#include "prereq/error.hpp"

namespace prereq {

namespace {
constexpr const char* kStage = "fuzzy";
}

void Thresholds::validate() const {
  if (!(s1 < 0.0)) throw Error(kStage, "s1 must be negative (got " + csv::format_double(s1) + ")");
  if (!(s2 > 0.0)) throw Error(kStage, "s2 must be positive (got " + csv::format_double(s2) + ")");
  if (!(s3 > s2))
    throw Error(kStage, "s3 must exceed s2 (got s2=" + csv::format_double(s2) + ", s3=" + csv::format_double(s3) + ")");
}

DeltaMatrix delta_grades(const GradeMatrix& m, const Hierarchy& h, const kernels::KernelTable& k) {
  for (const auto& s : h.skills())
    if (!m.has_skill(s.id)) throw Error(kStage, "grade matrix has no column for skill '" + s.id + "'");
  for (const auto& id : m.skills())
    if (!h.contains(id)) throw Error(kStage, "grade column '" + id + "' is not a skill of the hierarchy");

  const auto& links = edges_of(h);
  std::vector<std::int32_t> from, to;
  from.reserve(links.size());
  to.reserve(links.size());
  for (const auto& e : links) {
    from.push_back(static_cast<std::int32_t>(m.skill_index(e.from)));
    to.push_back(static_cast<std::int32_t>(m.skill_index(e.to)));
  }

  const auto rows = m.learner_count(), cols = links.size();
  DeltaMatrix d;
  d.learners = m.learners();
  d.links = links;
  d.values.assign(rows * cols, 0.0);
  d.present.assign(rows * cols, 1);
  if (rows && cols) k.delta(m.values().data(), rows, m.skill_count(), from.data(), to.data(), cols, d.values.data());

  if (!m.complete()) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (!m.has(r, static_cast<std::size_t>(from[c])) || !m.has(r, static_cast<std::size_t>(to[c]))) {
          d.present[r * cols + c] = 0;
          d.values[r * cols + c] = 0.0;
        }
  }
  return d;
}

FuzzyScores fuzzify(const DeltaMatrix& d, const Thresholds& t, const kernels::KernelTable& k) {
  t.validate();
  FuzzyScores f;
  f.learners = d.learners;
  f.links = d.links;
  f.present = d.present;
  f.cpr.assign(d.values.size(), 0.0);
  f.rpr.assign(d.values.size(), 0.0);
  if (!d.values.empty()) k.fuzzify(d.values.data(), d.values.size(), t, f.cpr.data(), f.rpr.data());
  for (std::size_t i = 0; i < f.present.size(); ++i)
    if (!f.present[i]) f.cpr[i] = f.rpr[i] = 0.0;
  return f;
}

EdgeAverages average_scores(const FuzzyScores& f, const kernels::KernelTable& k) {
  const auto rows = f.learners.size(), cols = f.links.size();
  EdgeAverages a;
  a.links = f.links;
  a.avg_cpr.assign(cols, 0.0);
  a.avg_rpr.assign(cols, 0.0);
  a.effective_n.assign(cols, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a.effective_n[c] += f.present[r * cols + c] ? 1 : 0;
  for (std::size_t c = 0; c < cols; ++c)
    if (a.effective_n[c] == 0) throw Error(kStage, "link " + to_string(f.links[c]) + " has no contributing learner");
  if (rows && cols) {
    k.column_sums(f.cpr.data(), f.present.data(), rows, cols, a.avg_cpr.data());
    k.column_sums(f.rpr.data(), f.present.data(), rows, cols, a.avg_rpr.data());
  }
  for (std::size_t c = 0; c < cols; ++c) {
    const auto n = static_cast<double>(a.effective_n[c]);
    a.avg_cpr[c] /= n;
    a.avg_rpr[c] /= n;
  }
  return a;
}

}  // namespace prereq
