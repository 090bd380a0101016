#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "snowsim/errors.hpp"
#include "snowsim/oracle.hpp"
#include "snowsim/runner.hpp"

using namespace snowsim;
using runner::ExperimentConfig;
using runner::RunResult;
using runner::Subcommand;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const SimError& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

TEST_CASE("config text parses every key and round-trips") {
  const std::string text =
      "# comment line\n"
      "subcommand = sweep\n"
      "\n"
      "p = 0.5,0.25,0.125\n"
      "device = 4096\n"
      "strategy = recycle\n"
      "trials = 42\n"
      "seed = 9\n"
      "max_steps = 5000\n"
      "threads = 3\n"
      "model = sequential_budget\n"
      "budgets = 2,2,3,2\n"
      "optimize = 1\n"
      "target = 3.5\n"
      "width = 9\n"
      "height = 7\n"
      "size = 32\n"
      "full_graph = 1\n"
      "metric = steps\n"
      "max_n = 4\n"
      "svg = 1\n";
  const ExperimentConfig cfg = runner::parse_config_text(text);
  CHECK(cfg.subcommand == Subcommand::Sweep);
  REQUIRE(cfg.p_s.size() == 3);
  CHECK(cfg.p_s[0] == 0.5);
  CHECK(cfg.p_s[2] == 0.125);
  CHECK(cfg.device_qubits == 4096);
  CHECK(cfg.strategy == phase1::Strategy::Recycle);
  CHECK(cfg.trials == 42);
  CHECK(cfg.seed == 9);
  CHECK(cfg.max_steps == 5000);
  CHECK(cfg.threads == 3);
  CHECK(cfg.model == phase2::AttemptModel::SequentialBudget);
  CHECK(cfg.budgets == std::array<int64_t, 4>{2, 2, 3, 2});
  CHECK(cfg.optimize);
  CHECK(cfg.target_size_per_p == 3.5);
  CHECK(cfg.width == 9);
  CHECK(cfg.height == 7);
  CHECK(cfg.snowball_size == 32);
  CHECK(cfg.full_graph);
  CHECK(cfg.metric == "steps");
  CHECK(cfg.max_n == 4);
  CHECK(cfg.emit_svg);

  const std::string serialized = runner::config_text(cfg);
  const ExperimentConfig again = runner::parse_config_text(serialized);
  CHECK(runner::config_text(again) == serialized);

  CHECK(code_of([] { runner::parse_config_text("frobnicate = 1\n"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { runner::parse_config_text("trials = soon\n"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { runner::parse_config_text("strategy = hoard\n"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { runner::parse_config_text("budgets = 1,2\n"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { runner::parse_config_text("p =\n"); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("trial csv is deterministic and ignores the thread count") {
  ExperimentConfig cfg;
  cfg.subcommand = Subcommand::Phase1;
  cfg.p_s = {0.5, 0.25};
  cfg.trials = 25;
  cfg.seed = 3;
  const RunResult r1 = runner::run_experiment(cfg);
  const RunResult r2 = runner::run_experiment(cfg);
  CHECK(r1.trial_csv == r2.trial_csv);
  CHECK(r1.summary_csv == r2.summary_csv);

  ExperimentConfig wide = cfg;
  wide.threads = 4;
  const RunResult r4 = runner::run_experiment(wide);
  CHECK(r4.trial_csv == r1.trial_csv);
  CHECK(r4.summary_csv == r1.summary_csv);

  const auto lines = lines_of(r1.trial_csv);
  REQUIRE(lines.size() == 51);
  CHECK(lines[0] ==
        "trial_id,phase,p_s,strategy,steps,final_size,age_oldest,"
        "max_error_weight,z_measurements,diameter,success");
  CHECK(lines[0] == runner::kTrialCsvHeader);
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    REQUIRE(f.size() == 11);
    CHECK(f[0] == std::to_string(i - 1));     // trial ids in order
    CHECK(f[2] == (i <= 25 ? "0.5" : "0.25"));  // p groups in config order
  }
}

TEST_CASE("phase1 rows mirror the pool results") {
  ExperimentConfig cfg;
  cfg.subcommand = Subcommand::Phase1;
  cfg.p_s = {0.5};
  cfg.trials = 30;
  cfg.seed = 11;
  const RunResult r = runner::run_experiment(cfg);
  REQUIRE(r.reports.size() == 30);
  for (const auto& row : r.reports) {
    CHECK(row.phase == "phase1");
    CHECK(row.strategy == "buffer");
    CHECK(row.p_s == 0.5);
    CHECK(row.steps >= 1);
    REQUIRE(row.success);  // level 1 on four qubits cannot time out at 1e6 steps
    CHECK(row.final_size == 2);
    CHECK(row.diameter == 1);
    CHECK(row.age_oldest == 1);
  }
}

TEST_CASE("sweep recovers the age slope") {
  ExperimentConfig cfg;
  cfg.subcommand = Subcommand::Sweep;
  cfg.p_s = {0.5, 0.25, 0.125};
  cfg.trials = 150;
  cfg.seed = 5;
  cfg.metric = "age";
  const RunResult r = runner::run_experiment(cfg);
  REQUIRE(r.fit.has_value());
  CHECK(r.fit->slope > 0.85);
  CHECK(r.fit->slope < 1.2);
  CHECK(r.fit->intercept > -0.35);
  CHECK(r.fit->intercept < 0.4);
  CHECK(r.summary_csv.find("fit_slope") != std::string::npos);
  CHECK(r.summary_csv.find("fit_residual") != std::string::npos);

  ExperimentConfig bad = cfg;
  bad.metric = "vibes";
  CHECK(code_of([&] { runner::run_experiment(bad); }) ==
        ErrorCode::InvalidArgument);

  ExperimentConfig thin = cfg;
  thin.p_s = {0.5, 0.25};
  CHECK(code_of([&] { runner::run_experiment(thin); }) ==
        ErrorCode::InsufficientData);
}

TEST_CASE("snowball rows carry the schedule tag") {
  ExperimentConfig cfg;
  cfg.subcommand = Subcommand::Snowball;
  cfg.p_s = {0.5};
  cfg.budgets = {2, 2, 2, 2};
  cfg.trials = 150;
  cfg.seed = 7;
  const RunResult r = runner::run_experiment(cfg);
  REQUIRE(r.reports.size() == 150);
  int64_t wins = 0;
  for (const auto& row : r.reports) {
    CHECK(row.phase == "snowball");
    CHECK(row.strategy == "parallel_burst 2/2/2/2");
    CHECK(row.steps >= 1);
    CHECK(row.steps <= 4);
    CHECK(row.final_size >= 1);
    if (row.success) {
      ++wins;
      CHECK(row.final_size >= 2);
      CHECK(row.diameter >= 1);
      CHECK(row.age_oldest >= 1);
    }
  }
  // All fifteen fusions succeed with probability 0.75^15 ~ 0.0134.
  const double freq = static_cast<double>(wins) / 150.0;
  CHECK(freq < 0.0134 + 3.0 * 0.00936);

  // The optimizer path resolves budgets once per p value.
  ExperimentConfig opt = cfg;
  opt.p_s = {0.125};
  opt.optimize = true;
  opt.trials = 5;
  const RunResult ro = runner::run_experiment(opt);
  CHECK(ro.reports[0].strategy == "parallel_burst 2/2/3/2");

  ExperimentConfig hopeless = opt;
  hopeless.p_s = {0.5};
  hopeless.target_size_per_p = 33.0;  // 16 flakes of 2/p can never reach it
  CHECK(code_of([&] { runner::run_experiment(hopeless); }) ==
        ErrorCode::NoFeasibleSchedule);
}

TEST_CASE("lattice rows cover both modes") {
  ExperimentConfig cfg;
  cfg.subcommand = Subcommand::Lattice;
  cfg.p_s = {0.5};
  cfg.width = 12;
  cfg.height = 12;
  cfg.snowball_size = 4;
  cfg.trials = 40;
  cfg.seed = 2;
  const RunResult r = runner::run_experiment(cfg);
  REQUIRE(r.reports.size() == 40);
  for (const auto& row : r.reports) {
    CHECK(row.phase == "lattice");
    CHECK(row.strategy == "statistical");
    CHECK(row.steps == 1);
    CHECK(row.final_size >= 1);
    CHECK(row.final_size <= 144);
    CHECK(row.z_measurements == 0);
  }

  ExperimentConfig full = cfg;
  full.width = 3;
  full.height = 3;
  full.full_graph = true;
  full.trials = 10;
  const RunResult rf = runner::run_experiment(full);
  for (const auto& row : rf.reports) {
    CHECK(row.strategy == "full-graph");
    CHECK(row.final_size >= 1);
    CHECK(row.final_size <= 9);
  }

  ExperimentConfig capped = full;
  capped.width = 5;
  CHECK(code_of([&] { runner::run_experiment(capped); }) ==
        ErrorCode::GridCapped);
}

TEST_CASE("oracle sweep entry point is exact") {
  const auto res = oracle::verify_measurement_rules(4);
  // (1*1 + 1*2 + 4*3 + 38*4) connected labeled graphs x vertices x 2 bases.
  CHECK(res.checks == 334);
  CHECK(res.mismatches == 0);
  CHECK(code_of([] { oracle::verify_measurement_rules(0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { oracle::verify_measurement_rules(9); }) ==
        ErrorCode::InvalidArgument);

  ExperimentConfig cfg;
  cfg.subcommand = Subcommand::VerifyOracle;
  cfg.max_n = 4;
  const RunResult r = runner::run_experiment(cfg);
  CHECK(r.checks == 334);
  CHECK(r.mismatches == 0);
  CHECK(r.summary_csv.find("334") != std::string::npos);
}

TEST_CASE("svg output appears only on request") {
  ExperimentConfig cfg;
  cfg.subcommand = Subcommand::Phase1;
  cfg.p_s = {0.5, 0.25, 0.125};
  cfg.trials = 15;
  cfg.seed = 21;
  CHECK(runner::run_experiment(cfg).svg.empty());

  cfg.emit_svg = true;
  const RunResult r = runner::run_experiment(cfg);
  CHECK(r.svg.find("<svg") != std::string::npos);
  CHECK(r.svg.find("polyline") != std::string::npos);
  CHECK(r.svg.find("</svg>") != std::string::npos);
}

TEST_CASE("config validation happens before any trial runs") {
  ExperimentConfig cfg;
  cfg.trials = 0;
  CHECK(code_of([&] { runner::run_experiment(cfg); }) ==
        ErrorCode::InvalidArgument);
  cfg.trials = 1;
  cfg.p_s = {};
  CHECK(code_of([&] { runner::run_experiment(cfg); }) ==
        ErrorCode::InvalidArgument);
  cfg.p_s = {1.5};
  CHECK(code_of([&] { runner::run_experiment(cfg); }) ==
        ErrorCode::InvalidArgument);
  cfg.p_s = {0.5};
  cfg.threads = 0;
  CHECK(code_of([&] { runner::run_experiment(cfg); }) ==
        ErrorCode::InvalidArgument);
}
