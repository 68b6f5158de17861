#include "prereq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "prereq/csv.hpp"
#include "prereq/error.hpp"
#include "prereq/graph.hpp"

namespace prereq {

namespace {

constexpr const char* kStage = "simulator";

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t learner_seed(std::uint64_t seed, std::size_t learner) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(learner));
}

std::vector<graph::Arc> arcs_of(const Hierarchy& h) {
  std::vector<graph::Arc> arcs;
  for (const auto& e : h.edges()) arcs.push_back({h.index_of(e.from), h.index_of(e.to)});
  return arcs;
}

}  // namespace

void CohortSpec::validate(double g_max) const {
  if (n_learners == 0) throw Error(kStage, "n_learners must be positive");
  if (!(noise_spread >= 0.0) || !std::isfinite(noise_spread)) throw Error(kStage, "noise_spread must be ≥ 0");
  if (!(base_low <= base_high)) throw Error(kStage, "base_grade_range needs low ≤ high");
  if (base_low < 0.0 || base_high > g_max)
    throw Error(kStage, "base_grade_range must lie within [0, " + csv::format_double(g_max) + "]");
}

CohortSpec parse_cohort_spec(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(kStage, std::string("invalid cohort spec JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(kStage, "cohort spec must be a JSON object");
  CohortSpec spec;
  try {
    if (doc.contains("n_learners")) spec.n_learners = doc["n_learners"].get<std::size_t>();
    if (doc.contains("noise_spread")) spec.noise_spread = doc["noise_spread"].get<double>();
    if (doc.contains("base_grade_range")) {
      const auto& range = doc["base_grade_range"];
      if (!range.is_array() || range.size() != 2) throw Error(kStage, "base_grade_range must be [low, high]");
      spec.base_low = range[0].get<double>();
      spec.base_high = range[1].get<double>();
    }
    if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(kStage, std::string("bad cohort spec field: ") + e.what());
  }
  return spec;
}

std::string cohort_spec_to_json(const CohortSpec& spec) {
  nlohmann::ordered_json j;
  j["n_learners"] = spec.n_learners;
  j["noise_spread"] = spec.noise_spread;
  j["base_grade_range"] = {spec.base_low, spec.base_high};
  j["seed"] = spec.seed;
  return j.dump(2) + "\n";
}

GradeMatrix generate_cohort(const Hierarchy& truth, const CohortSpec& spec, const Thresholds& t, double g_max) {
  t.validate();
  spec.validate(g_max);
  const auto n_skills = truth.skills().size();
  const auto arcs = arcs_of(truth);
  const auto order = graph::topological_order(n_skills, arcs);
  if (order.size() != n_skills) throw Error(kStage, "truth hierarchy is not acyclic");

  std::vector<std::vector<std::size_t>> prerequisites(n_skills);
  for (const auto& a : arcs) prerequisites[a.to].push_back(a.from);

  std::vector<std::string> learners, skills;
  for (std::size_t l = 0; l < spec.n_learners; ++l) learners.push_back("L" + std::to_string(l + 1));
  for (const auto& s : truth.skills()) skills.push_back(s.id);

  std::vector<double> values(spec.n_learners * n_skills, 0.0);
  for (std::size_t l = 0; l < spec.n_learners; ++l) {
    std::mt19937_64 rng(learner_seed(spec.seed, l));
    std::uniform_real_distribution<double> base(spec.base_low, spec.base_high);
    std::uniform_real_distribution<double> noise(-spec.noise_spread, spec.noise_spread);
    double* row = values.data() + l * n_skills;
    for (auto v : order) {
      double g;
      if (prerequisites[v].empty()) {
        g = base(rng);
      } else {
        double bottleneck = std::numeric_limits<double>::infinity();
        for (auto p : prerequisites[v]) bottleneck = std::min(bottleneck, row[p]);
        g = bottleneck + noise(rng);
      }
      row[v] = std::clamp(g, 0.0, g_max);
    }
  }
  return GradeMatrix::create(std::move(learners), std::move(skills), std::move(values), g_max);
}

Hierarchy perturb_hierarchy(const Hierarchy& truth, const std::vector<Edge>& reverse) {
  std::set<Edge> flip(reverse.begin(), reverse.end());
  std::set<Edge> existing(truth.edges().begin(), truth.edges().end());
  for (const auto& e : flip)
    if (!existing.count(e)) throw Error(kStage, "cannot reverse " + to_string(e) + ": not an edge of the hierarchy");

  std::vector<Edge> edges;
  edges.reserve(truth.edges().size());
  for (const auto& e : truth.edges()) edges.push_back(flip.count(e) ? e.reversed() : e);
  try {
    return build_hierarchy(truth.skills(), std::move(edges));
  } catch (const Error& e) {
    throw Error(kStage, "reversal set makes the hierarchy invalid (" + std::string(e.what()) + ")");
  }
}

std::vector<Edge> choose_reversible_edges(const Hierarchy& truth, std::size_t count, std::uint64_t seed) {
  std::vector<Edge> candidates = truth.edges();
  std::mt19937_64 rng(splitmix64(seed));
  std::shuffle(candidates.begin(), candidates.end(), rng);

  std::vector<Edge> chosen;
  for (const auto& e : candidates) {
    if (chosen.size() == count) break;
    chosen.push_back(e);
    try {
      perturb_hierarchy(truth, chosen);
    } catch (const Error&) {
      chosen.pop_back();
    }
  }
  return chosen;
}

TruthVerdicts expected_verdicts(const Hierarchy& expert, const std::vector<Edge>& reversed) {
  std::set<Edge> flipped(reversed.begin(), reversed.end());
  TruthVerdicts out;
  for (const auto& e : expert.edges())
    out.emplace_back(e, flipped.count(e.reversed()) ? Verdict::reversed : Verdict::kept);
  return out;
}

RecoveryStats evaluate_recovery(const TruthVerdicts& truth, const std::vector<EdgeDecision>& predicted) {
  std::map<Edge, Verdict> expected;
  for (const auto& [edge, verdict] : truth)
    if (!expected.emplace(edge, verdict).second) throw Error(kStage, "duplicate truth link " + to_string(edge));
  if (predicted.size() != expected.size()) throw Error(kStage, "truth and predicted link sets differ in size");

  RecoveryStats s;
  std::set<Edge> seen;
  for (const auto& d : predicted) {
    auto it = expected.find(d.original);
    if (it == expected.end()) throw Error(kStage, "predicted link " + to_string(d.original) + " has no truth verdict");
    if (!seen.insert(d.original).second) throw Error(kStage, "link " + to_string(d.original) + " predicted twice");
    ++s.confusion[static_cast<std::size_t>(it->second)][static_cast<std::size_t>(d.verdict)];
  }
  s.evaluated = predicted.size();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::size_t correct = 0;
  for (std::size_t v = 0; v < 3; ++v) {
    std::size_t predicted_v = 0, truth_v = 0;
    for (std::size_t u = 0; u < 3; ++u) {
      predicted_v += s.confusion[u][v];
      truth_v += s.confusion[v][u];
    }
    correct += s.confusion[v][v];
    s.precision[v] = predicted_v ? static_cast<double>(s.confusion[v][v]) / static_cast<double>(predicted_v) : nan;
    s.recall[v] = truth_v ? static_cast<double>(s.confusion[v][v]) / static_cast<double>(truth_v) : nan;
  }
  s.accuracy = s.evaluated ? static_cast<double>(correct) / static_cast<double>(s.evaluated) : nan;
  return s;
}

}  // namespace prereq
