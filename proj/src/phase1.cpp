#include "snowsim/phase1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace snowsim::phase1 {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::NoBuffer: return "no_buffer";
    case Strategy::Buffer: return "buffer";
    case Strategy::Recycle: return "recycle";
  }
  return "unknown";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "no_buffer") return Strategy::NoBuffer;
  if (name == "buffer") return Strategy::Buffer;
  if (name == "recycle") return Strategy::Recycle;
  return std::nullopt;
}

int target_level(double p_s) {
  if (!(p_s > 0.0) || p_s > 1.0)
    throw SimError(ErrorCode::InvalidArgument, "p_s must be in (0, 1]");
  // Smallest L with 2^L >= 1/p_s; the epsilon keeps exact powers of two from
  // rounding up one extra level.
  double v = std::log2(1.0 / p_s);
  int level = static_cast<int>(std::ceil(v - 1e-9));
  return level < 0 ? 0 : level;
}

uint64_t min_device_size(double p_s, Strategy s) {
  int level = target_level(p_s);
  uint64_t flake = uint64_t{1} << level;
  return s == Strategy::NoBuffer ? flake : 2 * flake;
}

uint64_t expected_device_size(double p_s) {
  int level = target_level(p_s);
  double v = std::pow(2.0 / p_s, static_cast<double>(level));
  if (v >= 1.8e19) return std::numeric_limits<uint64_t>::max();
  return static_cast<uint64_t>(std::ceil(v - 1e-9));
}

DeviceConfig validated(const DeviceConfig& cfg) {
  DeviceConfig out = cfg;
  uint64_t min_size = min_device_size(out.p_s, out.strategy);
  if (out.device_qubits == 0) out.device_qubits = min_size;
  if (out.device_qubits < min_size)
    throw SimError(ErrorCode::InvalidArgument,
                   "device too small for the strategy's minimum");
  if (out.max_steps <= 0)
    throw SimError(ErrorCode::InvalidArgument, "max_steps must be positive");
  return out;
}

SnowflakePool::SnowflakePool(const DeviceConfig& cfg) : cfg_(validated(cfg)) {
  pending_free_ = cfg_.device_qubits;
}

void SnowflakePool::stage(Handle h) { staged_.push_back(h); }

StepReport SnowflakePool::step(RandomStream& rng) {
  graph_.set_current_step(step_);

  // Reset qubits from earlier rounds come back as fresh free qubits.
  for (uint64_t i = 0; i < pending_free_; ++i) {
    QubitId v = graph_.add_free_vertex(step_);
    levels_[0].push_back(Handle{v, 0, step_, next_seq_++});
  }
  pending_free_ = 0;

  StepReport report;
  std::map<int, std::vector<Handle>> current;
  current.swap(levels_);

  for (auto& [level, handles] : current) {
    std::sort(handles.begin(), handles.end(), [](const Handle& a, const Handle& b) {
      return a.oldest_edge != b.oldest_edge ? a.oldest_edge < b.oldest_edge
                                            : a.seq < b.seq;
    });
    LevelStats stats;
    stats.level = level;
    size_t pairs = handles.size() / 2;
    for (size_t i = 0; i < pairs; ++i) {
      Handle a = handles[2 * i];
      Handle b = handles[2 * i + 1];
      // Captured before the attempt: a failure destroys both roots.
      std::vector<QubitId> members_a = graph_.component(a.root);
      std::vector<QubitId> members_b = graph_.component(b.root);
      std::vector<QubitId> frag_roots_a = graph_.neighbors(a.root);
      std::vector<QubitId> frag_roots_b = graph_.neighbors(b.root);

      ++stats.attempted;
      ++attempts_;
      FusionOutcome out = graph_.fuse(a.root, b.root, rng, cfg_.p_s);
      if (out.success) {
        ++stats.succeeded;
        Handle merged;
        merged.root = a.root;
        merged.level = level + 1;
        merged.oldest_edge =
            level == 0 ? step_ : std::min(a.oldest_edge, b.oldest_edge);
        merged.seq = next_seq_++;
        stage(merged);
        continue;
      }
      if (cfg_.strategy == Strategy::Recycle) {
        pending_free_ += 2;  // the destroyed roots
        for (const auto& frag_roots : {frag_roots_a, frag_roots_b}) {
          for (QubitId r : frag_roots) {
            std::vector<QubitId> comp = graph_.component(r);
            int frag_level = 0;
            while ((size_t{1} << frag_level) < comp.size()) ++frag_level;
            Handle frag;
            frag.root = r;
            frag.level = frag_level;
            auto oldest = graph_.min_edge_birth(comp);
            frag.oldest_edge = oldest ? *oldest : graph_.birth_step(r);
            frag.seq = next_seq_++;
            stage(frag);
          }
        }
      } else {
        // Reset both structures wholly to product-state qubits.
        for (const auto& members : {members_a, members_b})
          for (QubitId v : members)
            if (graph_.contains(v)) graph_.remove_vertex(v);
        pending_free_ += members_a.size() + members_b.size();
      }
    }
    // The odd one out waits for a partner.
    if (handles.size() % 2 == 1) stage(handles.back());
    if (stats.attempted > 0) {
      report.total_attempted += stats.attempted;
      report.total_succeeded += stats.succeeded;
      report.levels.push_back(stats);
    }
  }

  for (const Handle& h : staged_) levels_[h.level].push_back(h);
  staged_.clear();
  step_ += 1;
  return report;
}

std::vector<Handle> SnowflakePool::handles_at(int level) const {
  auto it = levels_.find(level);
  if (it == levels_.end()) return {};
  std::vector<Handle> out = it->second;
  std::sort(out.begin(), out.end(), [](const Handle& a, const Handle& b) {
    return a.oldest_edge != b.oldest_edge ? a.oldest_edge < b.oldest_edge
                                          : a.seq < b.seq;
  });
  return out;
}

std::optional<Handle> SnowflakePool::oldest_at(int level) const {
  auto handles = handles_at(level);
  if (handles.empty()) return std::nullopt;
  return handles.front();
}

void SnowflakePool::harvest(const Handle& h) {
  auto it = levels_.find(h.level);
  if (it == levels_.end())
    throw SimError(ErrorCode::InvalidArgument, "no such handle");
  auto& vec = it->second;
  auto pos = std::find_if(vec.begin(), vec.end(),
                          [&](const Handle& x) { return x.root == h.root; });
  if (pos == vec.end())
    throw SimError(ErrorCode::InvalidArgument, "no such handle");
  std::vector<QubitId> members = graph_.component(h.root);
  for (QubitId v : members) graph_.remove_vertex(v);
  pending_free_ += members.size();
  vec.erase(pos);
  if (vec.empty()) levels_.erase(it);
}

uint64_t SnowflakePool::free_count() const {
  auto it = levels_.find(0);
  return it == levels_.end() ? 0 : it->second.size();
}

uint64_t SnowflakePool::tracked_qubits() const {
  uint64_t total = 0;
  for (const auto& [level, handles] : levels_)
    total += handles.size() * (uint64_t{1} << level);
  return total;
}

int64_t age_of_oldest_entanglement(const GraphState& g,
                                   const std::vector<QubitId>& members,
                                   TimeStep now) {
  auto oldest = g.min_edge_birth(members);
  if (!oldest) return 0;
  return now - *oldest;
}

namespace {

Phase1Result summarize_completion(const SnowflakePool& pool, const Handle& h) {
  Phase1Result r;
  r.success = true;
  r.steps = pool.current_step();
  std::vector<QubitId> members = pool.graph().component(h.root);
  r.final_size = members.size();
  r.age_oldest = age_of_oldest_entanglement(pool.graph(), members, r.steps);
  for (QubitId v : members)
    r.max_error_weight = std::max(r.max_error_weight, pool.graph().error_weight(v));
  r.z_measurements = pool.graph().z_measurement_count();
  r.diameter = pool.graph().induced_diameter(members);
  r.eo_attempts = pool.total_attempts();
  return r;
}

Phase1Result summarize_timeout(const SnowflakePool& pool) {
  Phase1Result r;
  r.success = false;
  r.steps = pool.current_step();
  r.z_measurements = pool.graph().z_measurement_count();
  r.eo_attempts = pool.total_attempts();
  // Largest (then oldest) surviving snowflake stands in for the final state.
  std::optional<Handle> best;
  for (int level = 62; level >= 0 && !best; --level) best = pool.oldest_at(level);
  if (best) {
    std::vector<QubitId> members = pool.graph().component(best->root);
    r.final_size = members.size();
    r.age_oldest = age_of_oldest_entanglement(pool.graph(), members, r.steps);
    for (QubitId v : members)
      r.max_error_weight =
          std::max(r.max_error_weight, pool.graph().error_weight(v));
    r.diameter = pool.graph().induced_diameter(members);
  }
  return r;
}

}  // namespace

Phase1Result run_until_target(const DeviceConfig& cfg, RandomStream& rng) {
  DeviceConfig v = validated(cfg);
  int target = target_level(v.p_s);
  if (target == 0) {
    // A single free qubit already is the target object.
    Phase1Result r;
    r.success = true;
    r.final_size = 1;
    return r;
  }
  SnowflakePool pool(v);
  while (pool.current_step() < v.max_steps) {
    pool.step(rng);
    if (auto done = pool.oldest_at(target)) return summarize_completion(pool, *done);
  }
  return summarize_timeout(pool);
}

double estimate_production_rate(const DeviceConfig& cfg, int64_t steps,
                                RandomStream& rng) {
  if (steps <= 0)
    throw SimError(ErrorCode::InvalidArgument, "steps must be positive");
  DeviceConfig v = validated(cfg);
  int target = target_level(v.p_s);
  if (target == 0) return 1.0;
  SnowflakePool pool(v);
  int64_t burn_in = steps / 5;
  int64_t completed = 0;
  for (int64_t t = 0; t < steps; ++t) {
    pool.step(rng);
    std::vector<Handle> done = pool.handles_at(target);
    if (t >= burn_in) completed += static_cast<int64_t>(done.size());
    for (const Handle& h : done) pool.harvest(h);
  }
  return static_cast<double>(completed) / static_cast<double>(steps - burn_in);
}

}  // namespace snowsim::phase1
