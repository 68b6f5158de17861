#include "prereq/decision.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "prereq/csv.hpp"
#include "prereq/error.hpp"
#include "prereq/graph.hpp"

namespace prereq {

namespace {
constexpr const char* kStage = "decision";
}

void DecisionConfig::validate() const {
  if (!(alpha_min > 0.0 && alpha_min <= 1.0))
    throw Error(kStage, "alpha_min must lie in (0, 1] (got " + csv::format_double(alpha_min) + ")");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kept:
      return "KEPT";
    case Verdict::reversed:
      return "REVERSED";
    case Verdict::deleted:
      return "DELETED";
  }
  return "?";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "KEPT") return Verdict::kept;
  if (text == "REVERSED") return Verdict::reversed;
  if (text == "DELETED") return Verdict::deleted;
  throw Error(kStage, "unknown verdict '" + std::string(text) + "'");
}

std::optional<Edge> EdgeDecision::resulting() const {
  switch (verdict) {
    case Verdict::kept:
      return original;
    case Verdict::reversed:
      return original.reversed();
    case Verdict::deleted:
      break;
  }
  return std::nullopt;
}

std::vector<EdgeDecision> decide_edges(const EdgeAverages& a, const DecisionConfig& c) {
  c.validate();
  std::vector<EdgeDecision> out;
  out.reserve(a.links.size());
  for (std::size_t k = 0; k < a.links.size(); ++k) {
    EdgeDecision d;
    d.original = a.links[k];
    d.avg_cpr = a.avg_cpr[k];
    d.avg_rpr = a.avg_rpr[k];
    d.effective_n = a.effective_n.empty() ? 0 : a.effective_n[k];
    // Ties go to the expert's orientation; the threshold test is inclusive.
    if (d.avg_cpr >= d.avg_rpr) {
      if (d.avg_cpr >= c.alpha_min) {
        d.verdict = Verdict::kept;
        d.relevance = d.avg_cpr;
      }
    } else if (d.avg_rpr >= c.alpha_min) {
      d.verdict = Verdict::reversed;
      d.relevance = d.avg_rpr;
    }
    out.push_back(d);
  }
  return out;
}

FinalHierarchy build_final_hierarchy(std::vector<EdgeDecision> decisions, std::vector<Skill> skills) {
  FinalHierarchy f;
  f.skills = std::move(skills);
  f.provenance = std::move(decisions);

  std::map<Edge, std::size_t> position;
  for (std::size_t i = 0; i < f.provenance.size(); ++i) {
    auto edge = f.provenance[i].resulting();
    if (!edge) continue;
    auto [it, inserted] = position.emplace(*edge, f.edges.size());
    if (inserted) {
      f.edges.push_back({*edge, f.provenance[i].relevance, {i}});
      continue;
    }
    auto& existing = f.edges[it->second];
    f.collision_warnings.push_back("edge " + to_string(*edge) + " produced by both " +
                                   to_string(f.provenance[existing.sources.front()].original) + " and " +
                                   to_string(f.provenance[i].original) + "; keeping the larger relevance");
    existing.relevance = std::max(existing.relevance, f.provenance[i].relevance);
    existing.sources.push_back(i);
  }

  std::vector<Edge> edges;
  edges.reserve(f.edges.size());
  for (const auto& e : f.edges) edges.push_back(e.edge);
  f.cycle_warnings = check_acyclic(edges, f.skills);
  return f;
}

namespace {

std::vector<std::vector<std::string>> cycles_over(const std::vector<std::string>& nodes,
                                                  const std::vector<Edge>& edges) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);
  std::vector<graph::Arc> arcs;
  arcs.reserve(edges.size());
  for (const auto& e : edges) arcs.push_back({index.at(e.from), index.at(e.to)});
  std::vector<std::vector<std::string>> out;
  for (const auto& cycle : graph::find_cycles(nodes.size(), arcs)) {
    std::vector<std::string> ids;
    for (auto v : cycle) ids.push_back(nodes[v]);
    out.push_back(std::move(ids));
  }
  return out;
}

void append_unseen(std::vector<std::string>& nodes, std::unordered_map<std::string, bool>& seen,
                   const std::string& id) {
  if (seen.emplace(id, true).second) nodes.push_back(id);
}

}  // namespace

std::vector<std::vector<std::string>> check_acyclic(const std::vector<Edge>& edges) {
  std::vector<std::string> nodes;
  std::unordered_map<std::string, bool> seen;
  for (const auto& e : edges) {
    append_unseen(nodes, seen, e.from);
    append_unseen(nodes, seen, e.to);
  }
  return cycles_over(nodes, edges);
}

std::vector<std::vector<std::string>> check_acyclic(const std::vector<Edge>& edges, const std::vector<Skill>& skills) {
  std::vector<std::string> nodes;
  std::unordered_map<std::string, bool> seen;
  for (const auto& s : skills) append_unseen(nodes, seen, s.id);
  for (const auto& e : edges) {
    append_unseen(nodes, seen, e.from);
    append_unseen(nodes, seen, e.to);
  }
  return cycles_over(nodes, edges);
}

std::string_view deleted_link_note() {
  return "neither orientation reaches alpha_min; check the assessment items of both skills or whether the skills "
         "are independent";
}

}  // namespace prereq
