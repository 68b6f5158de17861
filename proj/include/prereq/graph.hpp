#pragma once

#include <string>
#include <vector>

namespace prereq::graph {

struct Arc {
  std::size_t from;
  std::size_t to;
};

/// Returns one witness cycle (as a vertex sequence, first vertex not
/// repeated) for every strongly connected component with more than one
/// vertex, plus every self-loop. Empty iff the graph is acyclic. Output
/// order is deterministic for a fixed input order.
std::vector<std::vector<std::size_t>> find_cycles(std::size_t vertex_count, const std::vector<Arc>& arcs);

/// Kahn order; vertices with equal rank keep their index order. Requires an
/// acyclic graph, returns fewer than `vertex_count` entries otherwise.
std::vector<std::size_t> topological_order(std::size_t vertex_count, const std::vector<Arc>& arcs);

}  // namespace prereq::graph
