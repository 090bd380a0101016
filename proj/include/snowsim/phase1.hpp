#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "snowsim/graph_state.hpp"
#include "snowsim/rng.hpp"

namespace snowsim::phase1 {

/// Failure-handling policy for the growth pool.
///
/// NoBuffer and Buffer share mechanics (a failed fusion resets both operand
/// structures to product-state qubits, available again the following step);
/// they differ in the minimum device size: NoBuffer commits every physical
/// qubit to one target snowflake, Buffer keeps a spare set of equal size.
/// Recycle keeps the fragments a failure leaves behind: both roots are
/// destroyed by the failed attempt and the remaining subtrees re-enter the
/// pool as the lower-level snowflakes they already are.
enum class Strategy { NoBuffer, Buffer, Recycle };

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

/// Smallest level whose snowflake holds at least 1/p_s qubits:
/// ceil(log2(1/p_s)). Throws on p_s outside (0, 1].
int target_level(double p_s);

/// Minimum device size the strategy needs: 2^L for NoBuffer, double that for
/// Buffer and Recycle.
uint64_t min_device_size(double p_s, Strategy s);

/// (2/p_s)^ceil(log2(1/p_s)) rounded up, the device size above which a
/// completed snowflake's age settles at its minimum. Saturates at the
/// largest uint64 for tiny p_s.
uint64_t expected_device_size(double p_s);

struct DeviceConfig {
  double p_s = 0.5;
  uint64_t device_qubits = 0;  // 0 picks min_device_size(p_s, strategy)
  Strategy strategy = Strategy::Buffer;
  uint64_t seed = 1;
  int64_t max_steps = 1000000;
};

/// Resolves defaults and throws on inconsistent settings.
DeviceConfig validated(const DeviceConfig& cfg);

/// Pool-side view of one snowflake living in the shared graph.
struct Handle {
  QubitId root = 0;
  int level = 0;
  /// Earliest edge birth step inside the snowflake; for level 0 (a bare
  /// qubit) the qubit's own birth step, used only for ordering.
  TimeStep oldest_edge = 0;
  uint64_t seq = 0;  // creation order, the deterministic tie-break
};

struct LevelStats {
  int level = 0;
  int64_t attempted = 0;
  int64_t succeeded = 0;
};

struct StepReport {
  std::vector<LevelStats> levels;
  int64_t total_attempted = 0;
  int64_t total_succeeded = 0;
};

/// Phase I growth pool: rounds are 0-indexed; during round t the fusions
/// stamp their edges with birth step t and the counter advances at the end
/// of the round. Qubits destroyed or reset in round t re-enter as fresh free
/// qubits (new ids) at the start of round t+1.
class SnowflakePool {
 public:
  explicit SnowflakePool(const DeviceConfig& cfg);

  /// One round: materialize pending qubits, pair snowflakes of equal level
  /// oldest-first, fuse all pairs in parallel, apply the failure policy.
  StepReport step(RandomStream& rng);

  TimeStep current_step() const { return step_; }
  const GraphState& graph() const { return graph_; }
  const DeviceConfig& config() const { return cfg_; }

  /// Handles at one level, ordered oldest-first.
  std::vector<Handle> handles_at(int level) const;
  /// Oldest handle at the given level, if any.
  std::optional<Handle> oldest_at(int level) const;

  /// Removes a snowflake from the pool; its qubits are reset and return as
  /// free qubits next round.
  void harvest(const Handle& h);

  uint64_t free_count() const;      // level-0 handles
  uint64_t pending_free() const { return pending_free_; }
  uint64_t tracked_qubits() const;  // qubits inside any handle
  int64_t total_attempts() const { return attempts_; }

 private:
  void stage(Handle h);

  DeviceConfig cfg_;
  GraphState graph_;
  std::map<int, std::vector<Handle>> levels_;
  std::vector<Handle> staged_;
  uint64_t pending_free_ = 0;
  uint64_t next_seq_ = 0;
  int64_t attempts_ = 0;
  TimeStep step_ = 0;
};

/// now minus the earliest edge birth among edges internal to `members`;
/// 0 when the set spans no edge.
int64_t age_of_oldest_entanglement(const GraphState& g,
                                   const std::vector<QubitId>& members,
                                   TimeStep now);

struct Phase1Result {
  bool success = false;  // false means the step budget ran out
  int64_t steps = 0;
  uint64_t final_size = 0;  // completed snowflake, or largest survivor
  int64_t age_oldest = 0;
  int64_t max_error_weight = 0;
  int64_t z_measurements = 0;
  int64_t diameter = 0;
  int64_t eo_attempts = 0;
};

/// Runs the pool until the first target-level snowflake completes or
/// max_steps rounds elapse. Timeout is reported in the result, not thrown.
Phase1Result run_until_target(const DeviceConfig& cfg, RandomStream& rng);

/// Steady-state completions per round, harvesting every completed snowflake;
/// the first fifth of the run is discarded as burn-in. Degenerate target
/// level 0 returns 1.
double estimate_production_rate(const DeviceConfig& cfg, int64_t steps,
                                RandomStream& rng);

}  // namespace snowsim::phase1
