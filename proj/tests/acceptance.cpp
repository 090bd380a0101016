// Acceptance gates, one verdict line per criterion. Tolerances live here,
// in code, next to the checks they guard. The binary exits nonzero if any
// criterion fails; context lines under a verdict explain what was measured.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "snowsim/oracle.hpp"
#include "snowsim/phase1.hpp"
#include "snowsim/phase2.hpp"
#include "snowsim/phase3.hpp"
#include "snowsim/rng.hpp"

using namespace snowsim;

namespace {

int g_failures = 0;

void verdict(int criterion, bool pass, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              text.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void context(const std::string& text) {
  std::printf("       %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - from)
      .count();
}

int64_t median(std::vector<int64_t> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// 1. Rewrite rules against the tableau on every connected graph, n <= 5.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sweep = oracle::verify_measurement_rules(5);
  const bool pass = sweep.checks == 7614 && sweep.mismatches == 0;
  verdict(1, pass,
          fmt("oracle equivalence on all connected graphs n <= 5: "
              "%llu checks, %llu mismatches (%.1f s)",
              static_cast<unsigned long long>(sweep.checks),
              static_cast<unsigned long long>(sweep.mismatches),
              seconds_since(t0)));
}

// 2. bond_probability at the paper's operating point, plus Monte Carlo.
void criterion_2() {
  const double p = 1e-3;
  const int64_t size = static_cast<int64_t>(std::floor(4.07 / p));  // 4070
  const double closed = phase3::bond_probability(size, p);
  const bool near_paper = std::abs(closed - 0.639) <= 0.002;

  const int64_t pairs = size / 4;
  const uint64_t trials = 100000;
  RandomStream rng(20260814);
  uint64_t hits = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    for (int64_t a = 0; a < pairs; ++a) {
      if (rng.bernoulli(p)) {
        ++hits;
        break;
      }
    }
  }
  const double freq = static_cast<double>(hits) / static_cast<double>(trials);
  const double three_se =
      3.0 * std::sqrt(closed * (1.0 - closed) / static_cast<double>(trials));
  const bool mc_agrees = std::abs(freq - closed) < three_se;

  verdict(2, near_paper && mc_agrees,
          fmt("bond probability at p_s = 1e-3: closed form %.6f vs 0.639 "
              "(tol 0.002), Monte Carlo %.6f (3 s.e. = %.6f)",
              closed, freq, three_se));
}

// 3. Crossing frequency above threshold and near the critical point.
void criterion_3() {
  const auto crossing_freq = [](double bond_p, uint64_t seed) {
    phase3::LatticeSpec spec;
    spec.width = 50;
    spec.height = 50;
    spec.p_s = bond_p;  // one attempt pair per neighbor: bond prob = p_s
    spec.snowball_size = 4;
    int crossings = 0;
    for (uint64_t t = 0; t < 1000; ++t) {
      RandomStream rng = RandomStream::for_trial(seed, t);
      const auto bonds = phase3::generate_bonds(spec, rng);
      if (phase3::percolation_report(bonds).crosses_left_right) ++crossings;
    }
    return static_cast<double>(crossings) / 1000.0;
  };
  const double above = crossing_freq(0.639, 1001);
  const double critical = crossing_freq(0.5, 1002);
  const bool pass = above >= 0.99 && critical >= 0.35 && critical <= 0.65;
  verdict(3, pass,
          fmt("50x50 crossing frequency: %.3f at bond probability 0.639 "
              "(need >= 0.99), %.3f at 0.5 (need within [0.35, 0.65])",
              above, critical));
}

// 4. Completed snowflakes age exactly ceil(log2(1/p)) on large devices.
void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  uint64_t anomalies = 0;
  uint64_t timeouts = 0;
  const struct {
    double p;
    uint64_t device;
  } setups[] = {{0.5, 64}, {0.25, 1024}};
  uint64_t gid = 0;
  for (const auto& setup : setups) {
    const int level = phase1::target_level(setup.p);
    for (uint64_t t = 0; t < 1000; ++t, ++gid) {
      phase1::DeviceConfig dc;
      dc.p_s = setup.p;
      dc.device_qubits = setup.device;
      dc.strategy = phase1::Strategy::Buffer;
      dc.max_steps = 1000000;
      RandomStream rng = RandomStream::for_trial(41, gid);
      const auto res = phase1::run_until_target(dc, rng);
      if (!res.success)
        ++timeouts;
      else if (res.age_oldest != level)
        ++anomalies;
    }
  }
  verdict(4, anomalies == 0 && timeouts == 0,
          fmt("snowflake age equals ceil(log2(1/p_s)) for p_s in {1/2, 1/4}: "
              "%llu age anomalies, %llu timeouts over 2000 trials (%.1f s)",
              static_cast<unsigned long long>(anomalies),
              static_cast<unsigned long long>(timeouts), seconds_since(t0)));
}

// 5. Strategy ordering at p_s = 1/8 over 10^4 trials per strategy.
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto median_steps = [](phase1::Strategy strategy, uint64_t seed) {
    std::vector<int64_t> steps;
    steps.reserve(10000);
    for (uint64_t t = 0; t < 10000; ++t) {
      phase1::DeviceConfig dc;
      dc.p_s = 0.125;
      dc.device_qubits = 0;  // strategy minimum: 8 bare, 16 buffered
      dc.strategy = strategy;
      dc.max_steps = 1000000;
      RandomStream rng = RandomStream::for_trial(seed, t);
      steps.push_back(phase1::run_until_target(dc, rng).steps);
    }
    return median(steps);
  };
  const int64_t no_buffer = median_steps(phase1::Strategy::NoBuffer, 51);
  const int64_t buffer = median_steps(phase1::Strategy::Buffer, 52);
  const int64_t recycle = median_steps(phase1::Strategy::Recycle, 53);
  const double improvement =
      static_cast<double>(buffer - recycle) / static_cast<double>(buffer);
  const bool pass = no_buffer > buffer && improvement < 0.15;
  verdict(5, pass,
          fmt("median completion steps at p_s = 1/8: no_buffer %lld > "
              "buffer %lld, recycle %lld (%.1f%% improvement, need < 15%%) "
              "(%.1f s)",
              static_cast<long long>(no_buffer),
              static_cast<long long>(buffer), static_cast<long long>(recycle),
              improvement * 100.0, seconds_since(t0)));
}

// 6. Diameter <= 40 over 10^3 snowballs actually built at p_s = 1/16.
void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  phase2::MassBuildConfig cfg;
  cfg.p_s = 1.0 / 16.0;
  cfg.schedule.model = phase2::AttemptModel::SequentialBudget;
  cfg.schedule.budgets = {8, 8, 8, 8};
  cfg.attempts = 2000000000;
  cfg.seed = 60;
  const auto stats = phase2::run_mass_builds(cfg);

  const bool produced = stats.successes >= 1000;
  int64_t max_diameter = 0;
  uint64_t over_bound = 0;
  std::vector<int64_t> diameters = stats.success_diameters;
  for (int64_t d : diameters) {
    max_diameter = std::max(max_diameter, d);
    if (d > 40) ++over_bound;
  }
  const bool bounded = produced && over_bound == 0;

  verdict(6, bounded,
          fmt("snowball diameter <= 40 at p_s = 1/16: %llu successes from "
              "%llu attempts, max diameter %lld, %llu builds over the bound "
              "(%.0f s)",
              static_cast<unsigned long long>(stats.successes),
              static_cast<unsigned long long>(stats.attempts),
              static_cast<long long>(max_diameter),
              static_cast<unsigned long long>(over_bound), seconds_since(t0)));
  if (!bounded && !diameters.empty()) {
    context(fmt("median successful diameter %lld; the bound holds for %.1f%% "
                "of built snowballs",
                static_cast<long long>(median(diameters)),
                100.0 * static_cast<double>(diameters.size() - over_bound) /
                    static_cast<double>(diameters.size())));
    context(
        "the one-attempt schedule {1,1,1,1} builds a deterministic "
        "diameter-39 snowball, inside the bound, but succeeds with "
        "probability (1/16)^15 ~ 8.7e-19 per attempt and is unreachable");
    context(
        "the best model-feasible schedule reaches ~4.9e-10 per attempt, "
        "~2e12 attempts for 10^3 builds, far past this harness's budget; "
        "diameter compliance and producibility do not overlap at this p_s");
  }
}

// 7. Optimizer report: determinism, frontier shape, p-independence.
void criterion_7() {
  const auto first =
      phase2::optimize_schedule(1.0 / 32.0, phase2::AttemptModel::ParallelBurst,
                                phase2::kReferenceTargets.snowball_size_per_p);
  const auto second =
      phase2::optimize_schedule(1.0 / 32.0, phase2::AttemptModel::ParallelBurst,
                                phase2::kReferenceTargets.snowball_size_per_p);
  bool deterministic = first.feasible == second.feasible &&
                       first.schedule.budgets == second.schedule.budgets &&
                       first.model_size_per_p == second.model_size_per_p &&
                       first.model_success_probability ==
                           second.model_success_probability &&
                       first.frontier.size() == second.frontier.size();
  for (size_t i = 0; deterministic && i < first.frontier.size(); ++i)
    deterministic = first.frontier[i].size_per_p ==
                        second.frontier[i].size_per_p &&
                    first.frontier[i].success_probability ==
                        second.frontier[i].success_probability;

  bool monotone = true;
  for (size_t i = 1; i < first.frontier.size(); ++i) {
    if (first.frontier[i].size_per_p <= first.frontier[i - 1].size_per_p ||
        first.frontier[i].success_probability >
            first.frontier[i - 1].success_probability)
      monotone = false;
  }

  // Fixed expected successes per burst: budget = ceil(x/p).
  bool independent = true;
  double worst_spread = 0.0;
  for (double x : {0.5, 1.0175, 1.5}) {
    double lo = 1.0, hi = 0.0;
    for (double p : {1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0}) {
      const auto budget = static_cast<int64_t>(std::ceil(x / p));
      const double prob = phase2::burst_success_probability(p, budget);
      lo = std::min(lo, prob);
      hi = std::max(hi, prob);
    }
    const double spread = (hi - lo) / hi;
    worst_spread = std::max(worst_spread, spread);
    if (spread >= 0.20) independent = false;
  }

  verdict(7, deterministic && monotone && independent,
          fmt("optimizer gates: deterministic %s, frontier monotone %s, "
              "burst probability p-spread %.1f%% (need < 20%%)",
              deterministic ? "yes" : "no", monotone ? "yes" : "no",
              worst_spread * 100.0));
  context(fmt("published reference pair: size 4.07/p_s at probability 2.31%%; "
              "achieved frontier at p_s = 1/32 (%zu points):",
              first.frontier.size()));
  const size_t stride = std::max<size_t>(1, first.frontier.size() / 6);
  for (size_t i = 0; i < first.frontier.size(); i += stride)
    context(fmt("  size %.4f / p_s at probability %.3e",
                first.frontier[i].size_per_p,
                first.frontier[i].success_probability));
  if (first.feasible)
    context(fmt("  chosen schedule {%lld,%lld,%lld,%lld}: size %.4f / p_s at "
                "probability %.3e (not gated against the published pair)",
                static_cast<long long>(first.schedule.budgets[0]),
                static_cast<long long>(first.schedule.budgets[1]),
                static_cast<long long>(first.schedule.budgets[2]),
                static_cast<long long>(first.schedule.budgets[3]),
                first.model_size_per_p, first.model_success_probability));
}

// 8. Device-size formula, exact integers.
void criterion_8() {
  const uint64_t quarter = phase1::expected_device_size(0.25);
  const uint64_t sixty_fourth = phase1::expected_device_size(1.0 / 64.0);
  const bool pass = quarter == 64 && sixty_fourth == 4398046511104ULL &&
                    sixty_fourth >= 1000000000000ULL;
  verdict(8, pass,
          fmt("expected device size: %llu at p_s = 1/4 (need 64), %llu at "
              "p_s = 1/64 (need >= 1e12)",
              static_cast<unsigned long long>(quarter),
              static_cast<unsigned long long>(sixty_fourth)));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 9. Byte-identical CSVs from repeated CLI invocations.
void criterion_9(const char* cli_path) {
  if (cli_path == nullptr) {
    verdict(9, false, "cli determinism: harness binary path not supplied");
    return;
  }
  std::filesystem::create_directories("acceptance_work");
  const auto run = [&](const std::string& args) {
    const std::string cmd = std::string("\"") + cli_path + "\" " + args +
                            " > acceptance_work/cli.log 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const std::string phase1_flags =
      "phase1 --p 0.25 --strategy buffer --trials 100 --seed 7 --out "
      "acceptance_work/p";
  const std::string lattice_flags =
      "lattice --p 0.639 --width 25 --height 25 --size 4 --trials 50 "
      "--seed 9 --out acceptance_work/l";
  bool pass = run(phase1_flags + "1") == 0 && run(phase1_flags + "2") == 0 &&
              run(lattice_flags + "1") == 0 && run(lattice_flags + "2") == 0;
  const std::string p1 = slurp("acceptance_work/p1.csv");
  pass = pass && !p1.empty() && p1 == slurp("acceptance_work/p2.csv") &&
         slurp("acceptance_work/p1_summary.csv") ==
             slurp("acceptance_work/p2_summary.csv");
  const std::string l1 = slurp("acceptance_work/l1.csv");
  pass = pass && !l1.empty() && l1 == slurp("acceptance_work/l2.csv");
  verdict(9, pass,
          "repeated cli invocations (phase1, lattice) emit byte-identical "
          "csv files");
}

}  // namespace

int main(int argc, char** argv) {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(argc > 1 ? argv[1] : nullptr);

  std::printf("%d of 9 criteria passed\n", 9 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
