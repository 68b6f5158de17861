#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prereq/fuzzy.hpp"
#include "prereq/hierarchy.hpp"

namespace prereq {

struct DecisionConfig {
  double alpha_min = 0.5;  // minimum relevance for a link to survive, in (0, 1]

  void validate() const;
};

enum class Verdict { kept, reversed, deleted };

std::string_view to_string(Verdict v);  // "KEPT", "REVERSED", "DELETED"
Verdict parse_verdict(std::string_view text);

struct EdgeDecision {
  Edge original;
  Verdict verdict = Verdict::deleted;
  double relevance = 0.0;  // winning average for KEPT/REVERSED, 0 for DELETED
  double avg_cpr = 0.0;
  double avg_rpr = 0.0;
  std::size_t effective_n = 0;

  /// Edge as it appears in the final hierarchy; empty for DELETED.
  std::optional<Edge> resulting() const;
};

struct FinalEdge {
  Edge edge;
  double relevance = 0.0;
  std::vector<std::size_t> sources;  // indices into FinalHierarchy::provenance
};

struct FinalHierarchy {
  std::vector<Skill> skills;
  std::vector<FinalEdge> edges;
  std::vector<EdgeDecision> provenance;              // one per original link
  std::vector<std::vector<std::string>> cycle_warnings;  // each a skill sequence
  std::vector<std::string> collision_warnings;
};

/// Keep when avg_cpr ≥ alpha_min and avg_cpr ≥ avg_rpr; reverse when
/// avg_rpr ≥ alpha_min and avg_rpr > avg_cpr; delete otherwise.
std::vector<EdgeDecision> decide_edges(const EdgeAverages& a, const DecisionConfig& c);

/// Assembles the final hierarchy from scratch in decision order. When two
/// decisions yield the same edge only one is emitted, carrying the larger
/// relevance and both sources, and a collision warning is recorded. The
/// result is audited with check_acyclic.
FinalHierarchy build_final_hierarchy(std::vector<EdgeDecision> decisions, std::vector<Skill> skills);

/// One witness cycle per strongly connected component of size > 1. Nodes are
/// ordered by first appearance in `edges` unless a skill list is given.
std::vector<std::vector<std::string>> check_acyclic(const std::vector<Edge>& edges);
std::vector<std::vector<std::string>> check_acyclic(const std::vector<Edge>& edges, const std::vector<Skill>& skills);

/// Annotation attached to deleted links in reports.
std::string_view deleted_link_note();

}  // namespace prereq
