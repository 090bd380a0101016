// Exhaustive enumeration of small labeled graphs for oracle tests.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "snowsim/graph_state.hpp"

namespace testsupport {

using Edge = std::pair<snowsim::QubitId, snowsim::QubitId>;

inline std::vector<Edge> edge_slots(int n) {
  std::vector<Edge> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      slots.emplace_back(static_cast<snowsim::QubitId>(i),
                         static_cast<snowsim::QubitId>(j));
  return slots;
}

inline bool mask_is_connected(int n, const std::vector<Edge>& slots,
                              uint32_t mask) {
  if (n <= 1) return true;
  std::vector<uint32_t> adj(static_cast<size_t>(n), 0);
  for (size_t s = 0; s < slots.size(); ++s) {
    if (mask & (1u << s)) {
      adj[slots[s].first] |= 1u << slots[s].second;
      adj[slots[s].second] |= 1u << slots[s].first;
    }
  }
  uint32_t seen = 1;
  uint32_t frontier = 1;
  while (frontier != 0) {
    uint32_t next = 0;
    for (int v = 0; v < n; ++v)
      if (frontier & (1u << v)) next |= adj[static_cast<size_t>(v)];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (n == 32 ? ~0u : (1u << n) - 1);
}

// All connected labeled graphs on vertices {0..n-1}, as edge lists.
inline std::vector<std::vector<Edge>> connected_graphs(int n) {
  const auto slots = edge_slots(n);
  std::vector<std::vector<Edge>> out;
  const uint32_t limit = 1u << slots.size();
  for (uint32_t mask = 0; mask < limit; ++mask) {
    if (!mask_is_connected(n, slots, mask)) continue;
    std::vector<Edge> edges;
    for (size_t s = 0; s < slots.size(); ++s)
      if (mask & (1u << s)) edges.push_back(slots[s]);
    out.push_back(std::move(edges));
  }
  return out;
}

inline snowsim::GraphState make_graph(int n, const std::vector<Edge>& edges) {
  snowsim::GraphState g;
  for (int v = 0; v < n; ++v)
    g.add_vertex_with_id(static_cast<snowsim::QubitId>(v), 0);
  for (const Edge& e : edges) g.add_edge(e.first, e.second, 0);
  return g;
}

}  // namespace testsupport
