#include "snowsim/graph_state.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace snowsim {

GraphState::Vertex& GraphState::at(QubitId v) {
  auto it = verts_.find(v);
  if (it == verts_.end()) throw SimError(ErrorCode::NoSuchQubit, "no such qubit");
  return it->second;
}

const GraphState::Vertex& GraphState::at(QubitId v) const {
  auto it = verts_.find(v);
  if (it == verts_.end()) throw SimError(ErrorCode::NoSuchQubit, "no such qubit");
  return it->second;
}

QubitId GraphState::add_free_vertex(TimeStep step) {
  QubitId id = next_id_++;
  Vertex vx;
  vx.birth = step;
  verts_.emplace(id, std::move(vx));
  return id;
}

void GraphState::add_vertex_with_id(QubitId v, TimeStep step) {
  if (verts_.count(v))
    throw SimError(ErrorCode::InvalidArgument, "vertex id already present");
  Vertex vx;
  vx.birth = step;
  verts_.emplace(v, std::move(vx));
  next_id_ = std::max(next_id_, v + 1);
}

void GraphState::add_edge(QubitId a, QubitId b, TimeStep birth_step) {
  if (a == b) throw SimError(ErrorCode::InvalidArgument, "self edge");
  Vertex& va = at(a);
  Vertex& vb = at(b);
  if (va.nbr.count(b)) throw SimError(ErrorCode::InvalidArgument, "edge already present");
  va.nbr.emplace(b, birth_step);
  vb.nbr.emplace(a, birth_step);
  va.incorporated = vb.incorporated = true;
}

void GraphState::unlink(QubitId v) {
  Vertex& vx = at(v);
  for (auto& [u, birth] : vx.nbr) verts_.at(u).nbr.erase(v);
  vx.nbr.clear();
}

void GraphState::measure_z(QubitId v) {
  Vertex& vx = at(v);
  for (auto& [u, birth] : vx.nbr) verts_.at(u).weight += 1;
  unlink(v);
  verts_.erase(v);
  z_count_ += 1;
}

void GraphState::local_complement(QubitId v) {
  const Vertex& vx = at(v);
  std::vector<QubitId> nb;
  nb.reserve(vx.nbr.size());
  for (auto& [u, birth] : vx.nbr) nb.push_back(u);
  for (size_t i = 0; i < nb.size(); ++i) {
    for (size_t j = i + 1; j < nb.size(); ++j) {
      Vertex& a = verts_.at(nb[i]);
      Vertex& b = verts_.at(nb[j]);
      auto it = a.nbr.find(nb[j]);
      if (it != a.nbr.end()) {
        a.nbr.erase(it);
        b.nbr.erase(nb[i]);
      } else {
        a.nbr.emplace(nb[j], step_);
        b.nbr.emplace(nb[i], step_);
      }
    }
  }
}

void GraphState::measure_y(QubitId v) {
  local_complement(v);
  Vertex& vx = at(v);
  for (auto& [u, birth] : vx.nbr) verts_.at(u).weight += 1;
  unlink(v);
  verts_.erase(v);
}

void GraphState::apply_fusion_success(QubitId a, QubitId b) {
  if (a == b) throw SimError(ErrorCode::SelfFusion, "self fusion");
  add_edge(a, b, step_);
  verts_.at(a).weight += 1;
  verts_.at(b).weight += 1;
}

void GraphState::apply_fusion_failure(QubitId a, QubitId b) {
  if (a == b) throw SimError(ErrorCode::SelfFusion, "self fusion");
  at(a);
  at(b);
  remove_vertex(a);
  remove_vertex(b);
}

FusionOutcome GraphState::fuse(QubitId a, QubitId b, RandomStream& rng, double p_s) {
  if (a == b) throw SimError(ErrorCode::SelfFusion, "self fusion");
  at(a);
  at(b);
  FusionOutcome out;
  out.success = rng.bernoulli(p_s);
  if (out.success) {
    apply_fusion_success(a, b);
  } else {
    out.consumed = {a, b};
    apply_fusion_failure(a, b);
  }
  return out;
}

void GraphState::remove_vertex(QubitId v) {
  at(v);
  unlink(v);
  verts_.erase(v);
}

void GraphState::absorb(GraphState& other) {
  if (this == &other)
    throw SimError(ErrorCode::InvalidArgument, "absorb of self");
  for (const auto& [id, vert] : other.verts_) {
    (void)vert;
    if (verts_.count(id))
      throw SimError(ErrorCode::InvalidArgument, "vertex id already present");
  }
  verts_.merge(other.verts_);
  next_id_ = std::max(next_id_, other.next_id_);
  step_ = std::max(step_, other.step_);
  z_count_ += other.z_count_;
  other.z_count_ = 0;
}

std::optional<int64_t> GraphState::path_length(QubitId a, QubitId b) const {
  at(a);
  at(b);
  if (a == b) return 0;
  std::set<QubitId> seen{a};
  std::deque<std::pair<QubitId, int64_t>> q{{a, 0}};
  while (!q.empty()) {
    auto [v, d] = q.front();
    q.pop_front();
    for (auto& [u, birth] : verts_.at(v).nbr) {
      if (u == b) return d + 1;
      if (seen.insert(u).second) q.emplace_back(u, d + 1);
    }
  }
  return std::nullopt;
}

int64_t GraphState::prune_to_tree(const std::vector<QubitId>& keep) {
  std::set<QubitId> kept(keep.begin(), keep.end());
  for (QubitId v : kept) at(v);
  int64_t zs = 0;

  // Vertices in components with no kept vertex go first.
  std::set<QubitId> reach;
  std::deque<QubitId> q(keep.begin(), keep.end());
  reach.insert(keep.begin(), keep.end());
  while (!q.empty()) {
    QubitId v = q.front();
    q.pop_front();
    for (auto& [u, birth] : verts_.at(v).nbr)
      if (reach.insert(u).second) q.push_back(u);
  }
  std::vector<QubitId> stranded;
  for (auto& [v, vx] : verts_)
    if (!reach.count(v)) stranded.push_back(v);
  for (QubitId v : stranded) {
    measure_z(v);
    ++zs;
  }

  // Peel unkept vertices of degree <= 1 until fixpoint; on a forest this
  // leaves exactly the minimal subtree spanning the kept set.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<QubitId> peel;
    for (auto& [v, vx] : verts_)
      if (!kept.count(v) && vx.nbr.size() <= 1) peel.push_back(v);
    for (QubitId v : peel) {
      measure_z(v);
      ++zs;
      changed = true;
    }
  }
  return zs;
}

size_t GraphState::edge_count() const {
  size_t twice = 0;
  for (auto& [v, vx] : verts_) twice += vx.nbr.size();
  return twice / 2;
}

size_t GraphState::degree(QubitId v) const { return at(v).nbr.size(); }

bool GraphState::has_edge(QubitId a, QubitId b) const {
  return at(a).nbr.count(b) != 0;
}

int64_t GraphState::error_weight(QubitId v) const { return at(v).weight; }

TimeStep GraphState::birth_step(QubitId v) const { return at(v).birth; }

TimeStep GraphState::edge_birth(QubitId a, QubitId b) const {
  const Vertex& va = at(a);
  auto it = va.nbr.find(b);
  if (it == va.nbr.end()) throw SimError(ErrorCode::InvalidArgument, "no such edge");
  return it->second;
}

VertexRole GraphState::role(QubitId v) const {
  const Vertex& vx = at(v);
  if (vx.nbr.size() == 1) return VertexRole::Leaf;
  if (vx.nbr.empty() && !vx.incorporated) return VertexRole::Free;
  if (vx.root_mark) return VertexRole::Root;
  return VertexRole::Internal;
}

void GraphState::mark_root(QubitId v, bool is_root) { at(v).root_mark = is_root; }

std::vector<QubitId> GraphState::vertices() const {
  std::vector<QubitId> out;
  out.reserve(verts_.size());
  for (auto& [v, vx] : verts_) out.push_back(v);
  return out;
}

std::vector<QubitId> GraphState::neighbors(QubitId v) const {
  const Vertex& vx = at(v);
  std::vector<QubitId> out;
  out.reserve(vx.nbr.size());
  for (auto& [u, birth] : vx.nbr) out.push_back(u);
  return out;
}

std::vector<std::pair<QubitId, QubitId>> GraphState::edges() const {
  std::vector<std::pair<QubitId, QubitId>> out;
  for (auto& [v, vx] : verts_)
    for (auto& [u, birth] : vx.nbr)
      if (v < u) out.emplace_back(v, u);
  return out;
}

std::vector<QubitId> GraphState::component(QubitId v) const {
  at(v);
  std::set<QubitId> seen{v};
  std::deque<QubitId> q{v};
  while (!q.empty()) {
    QubitId x = q.front();
    q.pop_front();
    for (auto& [u, birth] : verts_.at(x).nbr)
      if (seen.insert(u).second) q.push_back(u);
  }
  return std::vector<QubitId>(seen.begin(), seen.end());
}

int64_t GraphState::induced_diameter(const std::vector<QubitId>& members) const {
  if (members.empty()) throw SimError(ErrorCode::EmptyInput, "empty input");
  std::set<QubitId> in(members.begin(), members.end());
  for (QubitId v : in) at(v);
  int64_t best = 0;
  for (QubitId s : in) {
    std::map<QubitId, int64_t> dist{{s, 0}};
    std::deque<QubitId> q{s};
    while (!q.empty()) {
      QubitId v = q.front();
      q.pop_front();
      for (auto& [u, birth] : verts_.at(v).nbr) {
        if (!in.count(u) || dist.count(u)) continue;
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
    }
    if (dist.size() != in.size())
      throw SimError(ErrorCode::NotConnected, "not connected");
    for (auto& [v, d] : dist) best = std::max(best, d);
  }
  return best;
}

std::optional<TimeStep> GraphState::min_edge_birth(
    const std::vector<QubitId>& members) const {
  std::set<QubitId> in(members.begin(), members.end());
  std::optional<TimeStep> best;
  for (QubitId v : in) {
    const Vertex& vx = at(v);
    for (auto& [u, birth] : vx.nbr) {
      if (!in.count(u)) continue;
      if (!best || birth < *best) best = birth;
    }
  }
  return best;
}

bool GraphState::induced_is_tree(const std::vector<QubitId>& members) const {
  if (members.empty()) return false;
  std::set<QubitId> in(members.begin(), members.end());
  size_t internal_edges = 0;
  for (QubitId v : in) {
    const Vertex& vx = at(v);
    for (auto& [u, birth] : vx.nbr)
      if (in.count(u)) ++internal_edges;
  }
  internal_edges /= 2;
  if (internal_edges != in.size() - 1) return false;
  // Connectivity check via BFS from the first member.
  std::set<QubitId> seen{*in.begin()};
  std::deque<QubitId> q{*in.begin()};
  while (!q.empty()) {
    QubitId v = q.front();
    q.pop_front();
    for (auto& [u, birth] : verts_.at(v).nbr)
      if (in.count(u) && seen.insert(u).second) q.push_back(u);
  }
  return seen.size() == in.size();
}

bool topology_equals(const GraphState& a, const GraphState& b) {
  return a.vertices() == b.vertices() && a.edges() == b.edges();
}

}  // namespace snowsim
