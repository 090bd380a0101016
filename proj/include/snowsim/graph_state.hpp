#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "snowsim/errors.hpp"
#include "snowsim/rng.hpp"

namespace snowsim {

using QubitId = uint64_t;
using TimeStep = int64_t;

enum class VertexRole { Free, Leaf, Internal, Root };

/// Outcome of one heralded entangling attempt between two qubits.
struct FusionOutcome {
  bool success = false;
  /// Qubits destroyed by a failed attempt (both operands); empty on success.
  std::vector<QubitId> consumed;
};

/// Simulated graph state under the stabilizer rewrite rules.
///
/// Vertices are qubits, edges are entanglement. Ids are assigned once and
/// never reused; adjacency is kept symmetric and irreflexive. Each vertex
/// carries a birth step and an error-weight counter (+1 per successful
/// entangling operation it takes part in, +1 per byproduct correction when a
/// neighbor is measured out). Each edge carries the step it was created at.
///
/// Measurement semantics follow the usual graph-state rules:
///   Z on v: delete v and its edges.
///   Y on v: complement edges among the neighbors of v, then delete v.
/// Heralded fusion failure deletes both operands without byproducts.
class GraphState {
 public:
  GraphState() = default;

  /// Adds an isolated vertex with role free; returns its fresh id.
  QubitId add_free_vertex(TimeStep step);

  /// Adds a vertex with a caller-chosen id (fixture and oracle use).
  void add_vertex_with_id(QubitId v, TimeStep step);

  /// Direct edge insertion, bypassing fusion (fixture and oracle use).
  void add_edge(QubitId a, QubitId b, TimeStep birth_step);

  /// Z measurement: removes v and its incident edges; each former neighbor
  /// picks up one byproduct correction.
  void measure_z(QubitId v);

  /// Y measurement with +1 outcome: complements the subgraph induced by the
  /// neighbors of v, then removes v; neighbors pick up one byproduct each.
  void measure_y(QubitId v);

  /// Complements the edge set among the neighbors of v. Involution at fixed v.
  void local_complement(QubitId v);

  /// One heralded entangling attempt succeeding with probability p_s.
  /// Success joins a and b by an edge; failure destroys both operands.
  FusionOutcome fuse(QubitId a, QubitId b, RandomStream& rng, double p_s);

  /// Deterministic halves of fuse(), used where outcomes are staged up front.
  void apply_fusion_success(QubitId a, QubitId b);
  void apply_fusion_failure(QubitId a, QubitId b);

  /// Removes a vertex and its edges with no byproduct accounting (heralded
  /// loss or device reset; distinct from measure_z).
  void remove_vertex(QubitId v);

  /// Disjoint-union merge: moves every vertex and edge of `other` into this
  /// graph, keeping all metadata. Ids must not collide. `other` is emptied;
  /// its Z count folds in and the step counter becomes the max of the two.
  void absorb(GraphState& other);

  /// Shortest path length in edges, nullopt if unreachable.
  std::optional<int64_t> path_length(QubitId a, QubitId b) const;

  /// Z-measures every vertex not needed to connect the kept set and returns
  /// the number of Z measurements performed. On a forest this removes exactly
  /// the vertices off the minimal spanning subtree of `keep`; components
  /// containing no kept vertex are removed entirely. Empty keep empties the
  /// graph.
  int64_t prune_to_tree(const std::vector<QubitId>& keep);

  // Queries.
  bool contains(QubitId v) const { return verts_.count(v) != 0; }
  size_t vertex_count() const { return verts_.size(); }
  size_t edge_count() const;
  size_t degree(QubitId v) const;
  bool has_edge(QubitId a, QubitId b) const;
  int64_t error_weight(QubitId v) const;
  TimeStep birth_step(QubitId v) const;
  TimeStep edge_birth(QubitId a, QubitId b) const;
  VertexRole role(QubitId v) const;
  void mark_root(QubitId v, bool is_root);

  std::vector<QubitId> vertices() const;            // ascending
  std::vector<QubitId> neighbors(QubitId v) const;  // ascending
  std::vector<std::pair<QubitId, QubitId>> edges() const;  // a < b, sorted

  /// Connected component containing v, ascending ids.
  std::vector<QubitId> component(QubitId v) const;

  /// Longest shortest path within the subgraph induced by `members`
  /// (BFS from every member). Throws "not connected" if the induced
  /// subgraph is not connected; 0 for a single vertex.
  int64_t induced_diameter(const std::vector<QubitId>& members) const;

  /// Minimum edge birth step among edges internal to `members`;
  /// nullopt when there is no such edge.
  std::optional<TimeStep> min_edge_birth(const std::vector<QubitId>& members) const;

  /// True when the subgraph induced by `members` is connected and acyclic.
  bool induced_is_tree(const std::vector<QubitId>& members) const;

  TimeStep current_step() const { return step_; }
  void set_current_step(TimeStep s) { step_ = s; }

  /// Cumulative count of Z measurements applied to this graph.
  int64_t z_measurement_count() const { return z_count_; }

 private:
  struct Vertex {
    std::map<QubitId, TimeStep> nbr;  // neighbor id -> edge birth step
    TimeStep birth = 0;
    int64_t weight = 0;
    bool root_mark = false;
    bool incorporated = false;  // has ever carried an edge
  };

  Vertex& at(QubitId v);
  const Vertex& at(QubitId v) const;
  void unlink(QubitId v);  // drop v's edges from both endpoints

  std::map<QubitId, Vertex> verts_;
  QubitId next_id_ = 0;
  TimeStep step_ = 0;
  int64_t z_count_ = 0;
};

/// Same vertex set and same edge set (metadata ignored).
bool topology_equals(const GraphState& a, const GraphState& b);

}  // namespace snowsim
