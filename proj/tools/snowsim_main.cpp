// Command-line front end. Everything substantive happens behind the C API;
// this file only turns flags into configuration text and results into files.

#include <fstream>
#include <iostream>
#include <list>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "snowsim.h"

namespace {

struct OptBinding {
  CLI::Option* opt = nullptr;
  std::string key;
  std::string value;
};

struct FlagBinding {
  CLI::Option* opt = nullptr;
  std::string key;
  bool set = false;
};

bool slurp(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

bool spill(const std::string& path, const char* data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << data;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"snowsim: probabilistic growth of entangled graph states"};
  app.require_subcommand(1);

  std::list<OptBinding> opts;
  std::list<FlagBinding> bool_flags;
  std::string config_path;
  std::string out_prefix = "snowsim_out";

  const auto bind = [&opts](CLI::App* sub, const char* flag, const char* key,
                            const char* desc) {
    opts.push_back({});
    OptBinding& b = opts.back();
    b.key = key;
    b.opt = sub->add_option(flag, b.value, desc);
  };
  const auto bind_flag = [&bool_flags](CLI::App* sub, const char* flag,
                                       const char* key, const char* desc) {
    bool_flags.push_back({});
    FlagBinding& b = bool_flags.back();
    b.key = key;
    b.opt = sub->add_flag(flag, b.set, desc);
  };
  const auto bind_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "flat key = value config file; flags override it");
    sub->add_option("--out", out_prefix,
                    "output path prefix (default snowsim_out)");
    bind(sub, "--seed", "seed", "base RNG seed");
    bind(sub, "--threads", "threads",
         "worker threads; output bytes are identical for any value");
    bind_flag(sub, "--svg", "svg", "also emit an SVG plot");
  };

  CLI::App* phase1 =
      app.add_subcommand("phase1", "grow snowflakes on a shared qubit pool");
  bind(phase1, "--p", "p", "comma-separated EO success probabilities");
  bind(phase1, "--strategy", "strategy", "no_buffer | buffer | recycle");
  bind(phase1, "--device", "device", "device qubits (0 = strategy minimum)");
  bind(phase1, "--trials", "trials", "trials per p value");
  bind(phase1, "--max-steps", "max_steps", "step budget per trial");
  bind_common(phase1);

  CLI::App* snowball =
      app.add_subcommand("snowball", "fuse sixteen snowflakes into a snowball");
  bind(snowball, "--p", "p", "comma-separated EO success probabilities");
  bind(snowball, "--model", "model", "parallel_burst | sequential_budget");
  bind(snowball, "--budgets", "budgets", "four per-round budgets, e.g. 2,2,3,2");
  bind(snowball, "--target", "target",
       "optimizer target size in 1/p_s units (with --optimize)");
  bind(snowball, "--trials", "trials", "build attempts per p value");
  bind_flag(snowball, "--optimize", "optimize",
            "pick budgets with the schedule optimizer");
  bind_common(snowball);

  CLI::App* lattice =
      app.add_subcommand("lattice", "bond-percolation statistics of a cluster");
  bind(lattice, "--p", "p", "comma-separated EO success probabilities");
  bind(lattice, "--width", "width", "lattice width in sites");
  bind(lattice, "--height", "height", "lattice height in sites");
  bind(lattice, "--size", "size", "snowball size per site (0 = 4.07/p_s)");
  bind(lattice, "--trials", "trials", "lattice samples per p value");
  bind_flag(lattice, "--full-graph", "full_graph",
            "assemble real graphs (capped at 4x4 sites)");
  bind_common(lattice);

  CLI::App* verify = app.add_subcommand(
      "verify-oracle", "exhaustive rewrite-vs-tableau measurement sweep");
  bind(verify, "--max-n", "max_n", "largest graph order to sweep (1..6)");
  bind_common(verify);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "phase1 scaling fit across several p values");
  bind(sweep, "--p", "p", "comma-separated EO success probabilities (>= 3)");
  bind(sweep, "--strategy", "strategy", "no_buffer | buffer | recycle");
  bind(sweep, "--device", "device",
       "device qubits (0 = expected size for the age formula)");
  bind(sweep, "--trials", "trials", "trials per p value");
  bind(sweep, "--metric", "metric", "age | steps | weight | diameter");
  bind(sweep, "--max-steps", "max_steps", "step budget per trial");
  bind_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::string config;
  if (!config_path.empty()) {
    if (!slurp(config_path, config)) {
      std::cerr << "error: cannot read config file " << config_path << '\n';
      return 1;
    }
    config += '\n';
  }
  CLI::App* chosen = app.get_subcommands().front();
  config += "subcommand = " + chosen->get_name() + "\n";
  for (const OptBinding& b : opts)
    if (b.opt->count() > 0) config += b.key + " = " + b.value + "\n";
  for (const FlagBinding& b : bool_flags)
    if (b.opt->count() > 0) config += b.key + " = " + (b.set ? "1" : "0") + "\n";

  snowsim_run* run = nullptr;
  if (snowsim_run_create(config.c_str(), &run) != SNOWSIM_OK) {
    std::cerr << "error: " << snowsim_last_error() << '\n';
    return 1;
  }
  if (snowsim_run_execute(run) != SNOWSIM_OK) {
    std::cerr << "error: " << snowsim_last_error() << '\n';
    snowsim_run_destroy(run);
    return 1;
  }

  const std::string trial_path = out_prefix + ".csv";
  const std::string summary_path = out_prefix + "_summary.csv";
  if (!spill(trial_path, snowsim_run_trial_csv(run)) ||
      !spill(summary_path, snowsim_run_summary_csv(run))) {
    std::cerr << "error: cannot write outputs under " << out_prefix << '\n';
    snowsim_run_destroy(run);
    return 1;
  }
  std::cerr << "wrote " << trial_path << " and " << summary_path << '\n';

  const char* svg = snowsim_run_svg(run);
  if (svg != nullptr) {
    const std::string svg_path = out_prefix + ".svg";
    if (!spill(svg_path, svg)) {
      std::cerr << "error: cannot write " << svg_path << '\n';
      snowsim_run_destroy(run);
      return 1;
    }
    std::cerr << "wrote " << svg_path << '\n';
  }

  int exit_code = 0;
  if (chosen->get_name() == "verify-oracle") {
    const uint64_t checks = snowsim_run_checks(run);
    const uint64_t mismatches = snowsim_run_mismatches(run);
    std::cout << "oracle checks: " << checks << '\n'
              << "oracle mismatches: " << mismatches << '\n';
    if (mismatches > 0) exit_code = 2;
  } else {
    std::cout << snowsim_run_summary_csv(run);
  }

  snowsim_run_destroy(run);
  return exit_code;
}
