#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snowsim/metrics.hpp"
#include "snowsim/phase1.hpp"
#include "snowsim/phase2.hpp"

namespace snowsim::runner {

enum class Subcommand { Phase1, Snowball, Lattice, VerifyOracle, Sweep };

const char* subcommand_name(Subcommand s);
std::optional<Subcommand> subcommand_from_name(std::string_view name);

/// Everything one experiment needs. A zero device_qubits resolves to the
/// strategy minimum for phase1 and to expected_device_size for sweep; a zero
/// snowball_size resolves to floor(4.07 / p_s).
struct ExperimentConfig {
  Subcommand subcommand = Subcommand::Phase1;
  std::vector<double> p_s = {0.25};
  uint64_t device_qubits = 0;
  phase1::Strategy strategy = phase1::Strategy::Buffer;
  uint64_t trials = 100;
  uint64_t seed = 1;
  int64_t max_steps = 1000000;
  int threads = 1;
  phase2::AttemptModel model = phase2::AttemptModel::ParallelBurst;
  std::array<int64_t, 4> budgets{1, 1, 1, 1};
  bool optimize = false;           // snowball: budgets from optimize_schedule
  double target_size_per_p = 4.07;  // optimizer target when optimize is set
  int width = 50;
  int height = 50;
  int64_t snowball_size = 0;
  bool full_graph = false;  // lattice: assemble real graphs (capped at 4x4)
  std::string metric = "age";  // sweep fit metric: age|steps|weight|diameter
  int max_n = 5;               // verify-oracle graph size cap
  bool emit_svg = false;
};

/// Parses flat `key = value` lines; '#' starts a comment, blank lines are
/// skipped. Unknown keys and unparsable values throw. The same format serves
/// as the config-file syntax and as the transport into the C API.
ExperimentConfig parse_config_text(const std::string& text);

/// Serialized form that parse_config_text round-trips.
std::string config_text(const ExperimentConfig& cfg);

/// The exact trial CSV schema line, without a newline.
extern const char kTrialCsvHeader[];

struct RunResult {
  std::vector<metrics::TrialReport> reports;
  std::string trial_csv;
  std::string summary_csv;
  std::string svg;  // empty unless emit_svg
  std::optional<metrics::ScalingFit> fit;  // sweep only
  uint64_t checks = 0;                     // verify-oracle comparisons
  uint64_t mismatches = 0;                 // verify-oracle disagreements
};

/// Runs the experiment and renders its outputs. Trials fan out over
/// `threads` workers with one derived RNG stream per trial index, so the
/// bytes produced are identical for any thread count.
RunResult run_experiment(const ExperimentConfig& cfg);

}  // namespace snowsim::runner
