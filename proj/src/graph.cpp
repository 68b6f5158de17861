#include "prereq/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace prereq::graph {

namespace {

std::vector<std::vector<std::size_t>> adjacency(std::size_t n, const std::vector<Arc>& arcs) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& a : arcs) adj[a.from].push_back(a.to);
  return adj;
}

// Tarjan, iterative. Components come out in reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& f = call.back();
      if (f.next < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

// BFS inside one component from its smallest vertex back to itself.
std::vector<std::size_t> witness_cycle(const std::vector<std::vector<std::size_t>>& adj,
                                       const std::vector<std::size_t>& comp) {
  std::vector<bool> member(adj.size(), false);
  for (auto v : comp) member[v] = true;
  const std::size_t start = comp.front();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(adj.size(), kNone);
  std::queue<std::size_t> q;
  q.push(start);
  std::vector<bool> seen(adj.size(), false);
  seen[start] = true;
  std::size_t closing = kNone;
  while (!q.empty() && closing == kNone) {
    std::size_t v = q.front();
    q.pop();
    for (auto w : adj[v]) {
      if (!member[w]) continue;
      if (w == start) {
        closing = v;
        break;
      }
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        q.push(w);
      }
    }
  }
  std::vector<std::size_t> cycle;
  for (std::size_t v = closing; v != kNone; v = parent[v]) cycle.push_back(v);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

std::vector<std::vector<std::size_t>> find_cycles(std::size_t vertex_count, const std::vector<Arc>& arcs) {
  auto adj = adjacency(vertex_count, arcs);
  auto comps = strongly_connected(adj);
  std::sort(comps.begin(), comps.end());
  std::vector<std::vector<std::size_t>> cycles;
  for (const auto& comp : comps) {
    if (comp.size() > 1) {
      cycles.push_back(witness_cycle(adj, comp));
    } else {
      auto v = comp.front();
      if (std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end()) cycles.push_back({v});
    }
  }
  return cycles;
}

std::vector<std::size_t> topological_order(std::size_t vertex_count, const std::vector<Arc>& arcs) {
  auto adj = adjacency(vertex_count, arcs);
  std::vector<std::size_t> indegree(vertex_count, 0);
  for (const auto& a : arcs) ++indegree[a.to];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    auto v = ready.top();
    ready.pop();
    order.push_back(v);
    for (auto w : adj[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  return order;
}

}  // namespace prereq::graph
