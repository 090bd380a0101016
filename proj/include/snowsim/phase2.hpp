#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "snowsim/graph_state.hpp"
#include "snowsim/phase1.hpp"

namespace snowsim::phase2 {

/// How an allocation of perimeter pairs is fired. ParallelBurst fires every
/// allocated pair at once and trims surplus successes down to one edge;
/// SequentialBudget fires one pair at a time and stops at the first success.
/// Either way the success probability of the round is 1 - (1-p)^budget.
enum class AttemptModel { ParallelBurst, SequentialBudget };

const char* model_name(AttemptModel m);
std::optional<AttemptModel> model_from_name(std::string_view name);

/// Tree-shaped object grown by perimeter fusions. build_level 0 is a bare
/// snowflake; each completed fusion round increments it, up to 4.
struct Snowball {
  GraphState graph;
  double p_s = 1.0;
  int build_level = 0;

  /// Degree-1 qubits in ascending id order. A lone qubit is its own
  /// perimeter, so level-0 objects at p_s = 1 can still fuse.
  std::vector<QubitId> perimeter() const;

  /// Vertex count in units of 1/p_s.
  double size_per_p() const;
};

/// Perfect snowflake of the given level with breadth-first ids starting at
/// id_base (the root gets id_base). Edge birth steps replay the growth
/// rounds, so a level-k flake carries births 0..k-1, and error weights equal
/// vertex degrees, exactly as pool-grown flakes end up.
Snowball make_template_snowflake(int level, double p_s, QubitId id_base = 0);

struct FusionResult {
  bool success = false;
  /// Qubits destroyed: two per failed pair plus one per surplus success.
  int64_t consumed = 0;
};

/// 1 - (1-p_s)^budget.
double burst_success_probability(double p_s, int64_t budget);

/// Per-pair success draws for one allocation (shared by fuse_snowballs and
/// the mass-trial driver so both sample the identical law).
std::vector<char> draw_pair_outcomes(RandomStream& rng, int64_t budget, double p_s);

/// One fusion round between two snowballs over `budget` perimeter pairs,
/// lowest ids first. On success b is absorbed into a and a holds the merged
/// tree; on failure both operands keep their surviving vertices and the
/// caller decides disposal. Throws "insufficient perimeter" when either side
/// cannot supply `budget` qubits.
FusionResult fuse_snowballs(Snowball& a, Snowball& b, int64_t budget,
                            AttemptModel model, double p_s, RandomStream& rng);

/// Same mechanics with per-pair outcomes staged by the caller; outcome count
/// is the budget. Used by exhaustive enumeration tests and the conditioned
/// reconstruction path.
FusionResult fuse_snowballs_staged(Snowball& a, Snowball& b,
                                   const std::vector<char>& outcomes,
                                   AttemptModel model);

/// Per-round perimeter-pair budgets for the four fusion rounds of a build.
struct AllocationSchedule {
  std::array<int64_t, 4> budgets{1, 1, 1, 1};
  AttemptModel model = AttemptModel::ParallelBurst;
};

struct BuildReport {
  bool success = false;
  /// Rounds that fired (1..4); on failure the last one is the failing round.
  int rounds_attempted = 0;
  /// Mean object size (in 1/p_s units) after each fully successful round.
  std::array<double, 4> level_sizes_per_p{};
  int64_t consumed_total = 0;
  int64_t z_measurements = 0;
  /// Final snowball size, or the largest surviving fragment on failure.
  int64_t final_size = 0;
  int64_t diameter = 0;
  int64_t max_error_weight = 0;
};

/// Four rounds of pairwise fusions, 16 -> 8 -> 4 -> 2 -> 1. Every pair of a
/// round fires even after a failure in that round (the round is parallel);
/// the build succeeds iff all 15 fusions succeed. Requires exactly 16 flakes.
std::pair<std::optional<Snowball>, BuildReport> build_snowball(
    std::vector<Snowball> flakes, const AllocationSchedule& schedule,
    double p_s, RandomStream& rng);

/// Exact graph diameter in edges (BFS from every vertex).
int64_t max_pairwise_path(const Snowball& s);

/// Published values the simulation is compared against. Read-only reference
/// outputs, not acceptance gates; see the optimizer report for what this
/// implementation actually achieves.
struct ReferenceTargets {
  double snowball_size_per_p = 4.07;
  double build_probability = 0.0231;
  std::array<double, 4> level_sizes_per_p{1.55, 2.27, 3.15, 4.07};
  double bond_probability = 0.639;
  double percolation_threshold = 0.5;
  double path_bound_coefficient = 10.0;
};
inline constexpr ReferenceTargets kReferenceTargets{};

/// Closed-form model of one schedule: expected final size (in 1/p_s units)
/// and the probability that all 15 fusions succeed.
struct SchedulePoint {
  std::array<int64_t, 4> budgets{};
  double size_per_p = 0.0;
  double success_probability = 0.0;
};

/// Evaluates the schedule model, or nullopt when a budget exceeds the
/// worst-case perimeter available at its round.
std::optional<SchedulePoint> evaluate_schedule(double p_s, AttemptModel model,
                                               const std::array<int64_t, 4>& budgets);

struct OptimizeResult {
  bool feasible = false;
  AllocationSchedule schedule;
  double model_size_per_p = 0.0;
  double model_success_probability = 0.0;
  /// Non-dominated (size, probability) points, size ascending.
  std::vector<SchedulePoint> frontier;
};

/// Maximizes the modeled build probability subject to expected final size
/// >= target_size_per_p (in 1/p_s units), by coordinate descent over integer
/// budgets from a fixed set of starts plus frontier warm starts. Fully
/// deterministic. When no schedule meets the target, feasible is false and
/// the frontier still describes what is attainable.
OptimizeResult optimize_schedule(double p_s, AttemptModel model,
                                 double target_size_per_p);

struct MassBuildConfig {
  double p_s = 1.0 / 16.0;
  AllocationSchedule schedule;
  uint64_t attempts = 0;
  uint64_t seed = 1;
  /// Fast path: draw the 15 round-level success indicators first and only
  /// reconstruct full graphs for attempts where all of them pass, sampling
  /// pair outcomes conditioned on each round having at least one success.
  /// The law of (attempt succeeds, finished snowball) matches eager builds.
  bool fast_path = true;
};

struct MassBuildStats {
  uint64_t attempts = 0;
  uint64_t successes = 0;
  /// Attempts that ran out of perimeter mid-build; counted as failures.
  uint64_t perimeter_aborts = 0;
  std::array<double, 4> mean_level_sizes_per_p{};
  double mean_final_size_per_p = 0.0;
  double mean_consumed = 0.0;
  int64_t max_diameter = 0;
  int64_t max_error_weight = 0;
  /// Diameter of every successful build, in completion order.
  std::vector<int64_t> success_diameters;
};

/// Repeated independent build attempts drawn from one sequential RNG stream;
/// aggregates are over successful builds only.
MassBuildStats run_mass_builds(const MassBuildConfig& cfg);

}  // namespace snowsim::phase2
