#include "snowsim/oracle.hpp"

#include <utility>
#include <vector>

#include "snowsim/errors.hpp"
#include "snowsim/graph_state.hpp"
#include "snowsim/stabilizer.hpp"

namespace snowsim::oracle {

namespace {

// Edge slot k of the mask is the k-th pair (i, j), i < j, in lexicographic
// order.
std::vector<std::pair<int, int>> edges_of_mask(int n, uint32_t mask) {
  std::vector<std::pair<int, int>> edges;
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      if (mask & (uint32_t{1} << k)) edges.emplace_back(i, j);
  return edges;
}

bool connected(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n == 1) return true;
  std::vector<int> parent(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  auto find = [&](int v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  };
  int components = n;
  for (auto [a, b] : edges) {
    const int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[static_cast<size_t>(ra)] = rb;
      --components;
    }
  }
  return components == 1;
}

GraphState build(int n, const std::vector<std::pair<int, int>>& edges) {
  GraphState g;
  for (int i = 0; i < n; ++i) g.add_vertex_with_id(static_cast<QubitId>(i), 0);
  for (auto [a, b] : edges)
    g.add_edge(static_cast<QubitId>(a), static_cast<QubitId>(b), 0);
  return g;
}

}  // namespace

SweepResult verify_measurement_rules(int max_n) {
  if (max_n < 1 || max_n > 6)
    throw SimError(ErrorCode::InvalidArgument, "max_n must be in [1, 6]");

  SweepResult result;
  for (int n = 1; n <= max_n; ++n) {
    const int slots = n * (n - 1) / 2;
    for (uint32_t mask = 0; mask < (uint32_t{1} << slots); ++mask) {
      const auto edges = edges_of_mask(n, mask);
      if (!connected(n, edges)) continue;
      for (int v = 0; v < n; ++v) {
        for (stab::Basis basis : {stab::Basis::Z, stab::Basis::Y}) {
          GraphState g = build(n, edges);
          auto tableau = stab::StabilizerTableau::from_graph(g);
          tableau.measure_pauli(static_cast<QubitId>(v), basis);
          const GraphState reference = tableau.canonical_graph();
          if (basis == stab::Basis::Z)
            g.measure_z(static_cast<QubitId>(v));
          else
            g.measure_y(static_cast<QubitId>(v));
          ++result.checks;
          if (!topology_equals(g, reference)) ++result.mismatches;
        }
      }
    }
  }
  return result;
}

}  // namespace snowsim::oracle
