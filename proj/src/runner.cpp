#include "snowsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "snowsim/errors.hpp"
#include "snowsim/oracle.hpp"
#include "snowsim/phase3.hpp"
#include "snowsim/rng.hpp"

namespace snowsim::runner {

extern const char kTrialCsvHeader[] =
    "trial_id,phase,p_s,strategy,steps,final_size,age_oldest,"
    "max_error_weight,z_measurements,diameter,success";

const char* subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::Phase1: return "phase1";
    case Subcommand::Snowball: return "snowball";
    case Subcommand::Lattice: return "lattice";
    case Subcommand::VerifyOracle: return "verify-oracle";
    case Subcommand::Sweep: return "sweep";
  }
  throw SimError(ErrorCode::Internal, "unnamed subcommand");
}

std::optional<Subcommand> subcommand_from_name(std::string_view name) {
  if (name == "phase1") return Subcommand::Phase1;
  if (name == "snowball") return Subcommand::Snowball;
  if (name == "lattice") return Subcommand::Lattice;
  if (name == "verify-oracle") return Subcommand::VerifyOracle;
  if (name == "sweep") return Subcommand::Sweep;
  return std::nullopt;
}

namespace {

std::string g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw SimError(ErrorCode::InvalidArgument,
                 "bad value for " + key + ": '" + value + "'");
}

uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) bad_value(key, value);
    return v;
  } catch (const SimError&) {
    throw;
  } catch (...) {
    bad_value(key, value);
  }
}

int64_t to_i64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int64_t v = std::stoll(value, &pos);
    if (pos != value.size()) bad_value(key, value);
    return v;
  } catch (const SimError&) {
    throw;
  } catch (...) {
    bad_value(key, value);
  }
}

int to_int(const std::string& key, const std::string& value) {
  const int64_t v = to_i64(key, value);
  if (v < INT32_MIN || v > INT32_MAX) bad_value(key, value);
  return static_cast<int>(v);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) bad_value(key, value);
    return v;
  } catch (const SimError&) {
    throw;
  } catch (...) {
    bad_value(key, value);
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  bad_value(key, value);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::istringstream in(value);
  std::string part;
  while (std::getline(in, part, ',')) parts.push_back(trim(part));
  return parts;
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "subcommand") {
    const auto s = subcommand_from_name(value);
    if (!s) bad_value(key, value);
    cfg.subcommand = *s;
  } else if (key == "p") {
    cfg.p_s.clear();
    for (const auto& part : split_list(value))
      cfg.p_s.push_back(to_double(key, part));
    if (cfg.p_s.empty()) bad_value(key, value);
  } else if (key == "device") {
    cfg.device_qubits = to_u64(key, value);
  } else if (key == "strategy") {
    const auto s = phase1::strategy_from_name(value);
    if (!s) bad_value(key, value);
    cfg.strategy = *s;
  } else if (key == "trials") {
    cfg.trials = to_u64(key, value);
  } else if (key == "seed") {
    cfg.seed = to_u64(key, value);
  } else if (key == "max_steps") {
    cfg.max_steps = to_i64(key, value);
  } else if (key == "threads") {
    cfg.threads = to_int(key, value);
  } else if (key == "model") {
    const auto m = phase2::model_from_name(value);
    if (!m) bad_value(key, value);
    cfg.model = *m;
  } else if (key == "budgets") {
    const auto parts = split_list(value);
    if (parts.size() != 4) bad_value(key, value);
    for (size_t i = 0; i < 4; ++i) cfg.budgets[i] = to_i64(key, parts[i]);
  } else if (key == "optimize") {
    cfg.optimize = to_bool(key, value);
  } else if (key == "target") {
    cfg.target_size_per_p = to_double(key, value);
  } else if (key == "width") {
    cfg.width = to_int(key, value);
  } else if (key == "height") {
    cfg.height = to_int(key, value);
  } else if (key == "size") {
    cfg.snowball_size = to_i64(key, value);
  } else if (key == "full_graph") {
    cfg.full_graph = to_bool(key, value);
  } else if (key == "metric") {
    cfg.metric = value;
  } else if (key == "max_n") {
    cfg.max_n = to_int(key, value);
  } else if (key == "svg") {
    cfg.emit_svg = to_bool(key, value);
  } else {
    throw SimError(ErrorCode::InvalidArgument, "unknown config key: " + key);
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SimError(ErrorCode::InvalidArgument,
                     "config line is not key = value: " + line);
    apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "subcommand = " << subcommand_name(cfg.subcommand) << '\n';
  out << "p = ";
  for (size_t i = 0; i < cfg.p_s.size(); ++i)
    out << (i ? "," : "") << g17(cfg.p_s[i]);
  out << '\n';
  out << "device = " << cfg.device_qubits << '\n';
  out << "strategy = " << phase1::strategy_name(cfg.strategy) << '\n';
  out << "trials = " << cfg.trials << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "max_steps = " << cfg.max_steps << '\n';
  out << "threads = " << cfg.threads << '\n';
  out << "model = " << phase2::model_name(cfg.model) << '\n';
  out << "budgets = " << cfg.budgets[0] << ',' << cfg.budgets[1] << ','
      << cfg.budgets[2] << ',' << cfg.budgets[3] << '\n';
  out << "optimize = " << (cfg.optimize ? 1 : 0) << '\n';
  out << "target = " << g17(cfg.target_size_per_p) << '\n';
  out << "width = " << cfg.width << '\n';
  out << "height = " << cfg.height << '\n';
  out << "size = " << cfg.snowball_size << '\n';
  out << "full_graph = " << (cfg.full_graph ? 1 : 0) << '\n';
  out << "metric = " << cfg.metric << '\n';
  out << "max_n = " << cfg.max_n << '\n';
  out << "svg = " << (cfg.emit_svg ? 1 : 0) << '\n';
  return out.str();
}

namespace {

void csv_row(std::ostringstream& out, const metrics::TrialReport& r) {
  out << r.trial_id << ',' << r.phase << ',' << g6(r.p_s) << ',' << r.strategy
      << ',' << r.steps << ',' << r.final_size << ',' << r.age_oldest << ','
      << r.max_error_weight << ',' << r.z_measurements << ',' << r.diameter
      << ',' << (r.success ? 1 : 0) << '\n';
}

/// Runs fn(0..total-1) across the requested workers; the first exception
/// wins and cancels the rest.
void fan_out(uint64_t total, int threads,
             const std::function<void(uint64_t)>& fn) {
  const uint64_t capped =
      std::min<uint64_t>(static_cast<uint64_t>(threads), total ? total : 1);
  if (capped <= 1) {
    for (uint64_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<uint64_t> next{0};
  std::mutex gate;
  std::exception_ptr first_error;
  auto work = [&] {
    for (;;) {
      const uint64_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(gate);
        if (!first_error) first_error = std::current_exception();
        next.store(total);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(capped);
  for (uint64_t t = 0; t < capped; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

metrics::TrialReport phase1_trial(const ExperimentConfig& cfg, double p,
                                  uint64_t device, uint64_t gid) {
  phase1::DeviceConfig dc;
  dc.p_s = p;
  dc.device_qubits = device;
  dc.strategy = cfg.strategy;
  dc.seed = cfg.seed;
  dc.max_steps = cfg.max_steps;
  RandomStream rng = RandomStream::for_trial(cfg.seed, gid);
  const phase1::Phase1Result res = phase1::run_until_target(dc, rng);

  metrics::TrialReport row;
  row.trial_id = static_cast<int64_t>(gid);
  row.phase = "phase1";
  row.p_s = p;
  row.strategy = phase1::strategy_name(cfg.strategy);
  row.steps = res.steps;
  row.final_size = static_cast<int64_t>(res.final_size);
  row.age_oldest = res.age_oldest;
  row.max_error_weight = res.max_error_weight;
  row.z_measurements = res.z_measurements;
  row.diameter = res.diameter;
  row.success = res.success;
  return row;
}

std::string schedule_tag(const phase2::AllocationSchedule& schedule) {
  std::ostringstream tag;
  tag << phase2::model_name(schedule.model) << ' ';
  for (size_t i = 0; i < schedule.budgets.size(); ++i)
    tag << (i ? "/" : "") << schedule.budgets[i];
  return tag.str();
}

metrics::TrialReport snowball_trial(const ExperimentConfig& cfg, double p,
                                    const phase2::AllocationSchedule& schedule,
                                    const std::string& tag, uint64_t gid) {
  const int level = phase1::target_level(p);
  std::vector<phase2::Snowball> flakes;
  flakes.reserve(16);
  for (uint64_t i = 0; i < 16; ++i)
    flakes.push_back(phase2::make_template_snowflake(
        level, p, i << static_cast<unsigned>(level)));
  RandomStream rng = RandomStream::for_trial(cfg.seed, gid);
  auto [ball, rep] = phase2::build_snowball(std::move(flakes), schedule, p, rng);

  metrics::TrialReport row;
  row.trial_id = static_cast<int64_t>(gid);
  row.phase = "snowball";
  row.p_s = p;
  row.strategy = tag;
  row.steps = rep.rounds_attempted;
  row.final_size = rep.final_size;
  row.age_oldest =
      ball ? phase1::age_of_oldest_entanglement(ball->graph,
                                                ball->graph.vertices(),
                                                ball->graph.current_step())
           : 0;
  row.max_error_weight = rep.max_error_weight;
  row.z_measurements = rep.z_measurements;
  row.diameter = rep.diameter;
  row.success = rep.success;
  return row;
}

int64_t resolve_snowball_size(const ExperimentConfig& cfg, double p) {
  if (cfg.snowball_size > 0) return cfg.snowball_size;
  return std::max<int64_t>(4, static_cast<int64_t>(std::floor(4.07 / p)));
}

metrics::TrialReport lattice_trial(const ExperimentConfig& cfg, double p,
                                   uint64_t gid) {
  RandomStream rng = RandomStream::for_trial(cfg.seed, gid);
  metrics::TrialReport row;
  row.trial_id = static_cast<int64_t>(gid);
  row.phase = "lattice";
  row.p_s = p;
  row.steps = 1;  // every neighbor attempt fires in one parallel round
  const int64_t sites = static_cast<int64_t>(cfg.width) * cfg.height;

  if (cfg.full_graph) {
    const int level = std::max(2, phase1::target_level(p));
    std::vector<std::vector<phase2::Snowball>> grid(
        static_cast<size_t>(cfg.height));
    uint64_t site = 0;
    for (int y = 0; y < cfg.height; ++y)
      for (int x = 0; x < cfg.width; ++x, ++site)
        grid[static_cast<size_t>(y)].push_back(phase2::make_template_snowflake(
            level, p, site << static_cast<unsigned>(level)));
    const auto lat = phase3::assemble_small_lattice(std::move(grid), p, rng);
    const auto rep = phase3::percolation_report(lat.raw_bonds);
    row.strategy = "full-graph";
    row.final_size = static_cast<int64_t>(
        std::llround(rep.largest_cluster_fraction * static_cast<double>(sites)));
    row.success = rep.crosses_left_right;
    row.z_measurements = lat.graph.z_measurement_count();
    int64_t weight = 0;
    for (QubitId v : lat.graph.vertices())
      weight = std::max(weight, lat.graph.error_weight(v));
    row.max_error_weight = weight;
    return row;
  }

  phase3::LatticeSpec spec;
  spec.width = cfg.width;
  spec.height = cfg.height;
  spec.p_s = p;
  spec.snowball_size = resolve_snowball_size(cfg, p);
  const auto bonds = phase3::generate_bonds(spec, rng);
  const auto rep = phase3::percolation_report(bonds);
  row.strategy = "statistical";
  row.final_size = static_cast<int64_t>(
      std::llround(rep.largest_cluster_fraction * static_cast<double>(sites)));
  row.success = rep.crosses_left_right;
  return row;
}

double sweep_metric(const metrics::TrialReport& r, const std::string& name) {
  if (name == "age") return static_cast<double>(r.age_oldest);
  if (name == "steps") return static_cast<double>(r.steps);
  if (name == "weight") return static_cast<double>(r.max_error_weight);
  if (name == "diameter") return static_cast<double>(r.diameter);
  throw SimError(ErrorCode::InvalidArgument, "unknown sweep metric: " + name);
}

std::string render_summary(const ExperimentConfig& cfg,
                           const std::vector<metrics::TrialReport>& reports,
                           const std::optional<metrics::ScalingFit>& fit) {
  std::ostringstream out;
  out << "p_s,strategy,metric,count,mean,median,q25,q75,min,max\n";
  const size_t groups = cfg.p_s.size();
  for (size_t g = 0; g < groups; ++g) {
    const auto first = reports.begin() + static_cast<ptrdiff_t>(g * cfg.trials);
    const std::vector<metrics::TrialReport> slice(
        first, first + static_cast<ptrdiff_t>(cfg.trials));
    for (const auto& row : metrics::aggregate(slice)) {
      out << g6(cfg.p_s[g]) << ',' << slice.front().strategy << ','
          << row.metric << ',' << row.count << ',' << g6(row.mean) << ','
          << g6(row.median) << ',' << g6(row.q25) << ',' << g6(row.q75) << ','
          << g6(row.min) << ',' << g6(row.max) << '\n';
    }
  }
  if (fit) {
    const auto emit = [&](const char* name, double v) {
      out << "all," << reports.front().strategy << ',' << name << ','
          << cfg.p_s.size() << ',' << g6(v) << ',' << g6(v) << ',' << g6(v)
          << ',' << g6(v) << ',' << g6(v) << ',' << g6(v) << '\n';
    };
    emit("fit_slope", fit->slope);
    emit("fit_intercept", fit->intercept);
    emit("fit_residual", fit->residual);
  }
  return out.str();
}

std::string render_svg(const std::vector<std::pair<double, double>>& points,
                       const std::string& x_label, const std::string& y_label) {
  double xmin = points.front().first, xmax = xmin;
  double ymin = points.front().second, ymax = ymin;
  for (const auto& [x, y] : points) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  const double px0 = 60.0, px1 = 450.0, py0 = 270.0, py1 = 30.0;
  const auto sx = [&](double x) {
    return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0);
  };
  const auto sy = [&](double y) {
    return py0 + (y - ymin) / (ymax - ymin) * (py1 - py0);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"480\" height=\"320\" viewBox=\"0 0 480 320\">\n";
  svg << "<rect width=\"480\" height=\"320\" fill=\"white\"/>\n";
  svg << "<line x1=\"60\" y1=\"270\" x2=\"450\" y2=\"270\" stroke=\"black\"/>\n";
  svg << "<line x1=\"60\" y1=\"270\" x2=\"60\" y2=\"30\" stroke=\"black\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" "
         "points=\"";
  for (size_t i = 0; i < points.size(); ++i)
    svg << (i ? " " : "") << g6(sx(points[i].first)) << ','
        << g6(sy(points[i].second));
  svg << "\"/>\n";
  for (const auto& [x, y] : points)
    svg << "<circle cx=\"" << g6(sx(x)) << "\" cy=\"" << g6(sy(y))
        << "\" r=\"3\" fill=\"steelblue\"/>\n";
  svg << "<text x=\"255\" y=\"300\" text-anchor=\"middle\" "
         "font-size=\"12\">" << x_label << "</text>\n";
  svg << "<text x=\"12\" y=\"20\" font-size=\"12\">" << y_label << "</text>\n";
  svg << "<text x=\"66\" y=\"284\" font-size=\"10\">" << g6(xmin)
      << "</text>\n";
  svg << "<text x=\"430\" y=\"284\" font-size=\"10\">" << g6(xmax)
      << "</text>\n";
  svg << "<text x=\"16\" y=\"270\" font-size=\"10\">" << g6(ymin)
      << "</text>\n";
  svg << "<text x=\"16\" y=\"38\" font-size=\"10\">" << g6(ymax)
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void validate_common(const ExperimentConfig& cfg) {
  if (cfg.trials < 1)
    throw SimError(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (cfg.p_s.empty())
    throw SimError(ErrorCode::InvalidArgument, "need at least one p_s value");
  for (double p : cfg.p_s)
    if (!(p > 0.0) || p > 1.0)
      throw SimError(ErrorCode::InvalidArgument, "p_s must be in (0, 1]");
  if (cfg.threads < 1 || cfg.threads > 256)
    throw SimError(ErrorCode::InvalidArgument, "threads must be in [1, 256]");
  if (cfg.max_steps < 1)
    throw SimError(ErrorCode::InvalidArgument, "max_steps must be at least 1");
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  RunResult result;

  if (cfg.subcommand == Subcommand::VerifyOracle) {
    const auto sweep = oracle::verify_measurement_rules(cfg.max_n);
    result.checks = sweep.checks;
    result.mismatches = sweep.mismatches;
    result.trial_csv = std::string(kTrialCsvHeader) + "\n";
    std::ostringstream summary;
    summary << "checks,mismatches\n" << sweep.checks << ',' << sweep.mismatches
            << '\n';
    result.summary_csv = summary.str();
    return result;
  }

  validate_common(cfg);

  if (cfg.subcommand == Subcommand::Lattice) {
    if (cfg.width < 2 || cfg.height < 2)
      throw SimError(ErrorCode::InvalidArgument,
                     "lattice needs width, height >= 2");
    if (cfg.full_graph && (cfg.width > 4 || cfg.height > 4))
      throw SimError(ErrorCode::GridCapped, "full-graph mode capped");
  }

  std::string metric_label = "mean steps";
  if (cfg.subcommand == Subcommand::Sweep) {
    sweep_metric(metrics::TrialReport{}, cfg.metric);  // validates the name
    std::vector<double> distinct = cfg.p_s;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    if (distinct.size() < 3)
      throw SimError(ErrorCode::InsufficientData,
                     "insufficient data: need at least 3 distinct p_s values");
    metric_label = "mean " + cfg.metric;
  }

  // Snowball budgets resolve once per p value, before any trial fires.
  std::vector<phase2::AllocationSchedule> schedules;
  std::vector<std::string> tags;
  if (cfg.subcommand == Subcommand::Snowball) {
    for (double p : cfg.p_s) {
      phase2::AllocationSchedule schedule;
      schedule.model = cfg.model;
      schedule.budgets = cfg.budgets;
      if (cfg.optimize) {
        const auto opt =
            phase2::optimize_schedule(p, cfg.model, cfg.target_size_per_p);
        if (!opt.feasible)
          throw SimError(ErrorCode::NoFeasibleSchedule,
                         "no schedule reaches the target size at p_s = " +
                             g6(p));
        schedule = opt.schedule;
      }
      schedules.push_back(schedule);
      tags.push_back(schedule_tag(schedule));
    }
  }

  const uint64_t total = cfg.trials * cfg.p_s.size();
  result.reports.resize(total);
  fan_out(total, cfg.threads, [&](uint64_t gid) {
    const size_t group = static_cast<size_t>(gid / cfg.trials);
    const double p = cfg.p_s[group];
    switch (cfg.subcommand) {
      case Subcommand::Phase1:
        result.reports[gid] = phase1_trial(cfg, p, cfg.device_qubits, gid);
        break;
      case Subcommand::Sweep: {
        const uint64_t device = cfg.device_qubits
                                    ? cfg.device_qubits
                                    : phase1::expected_device_size(p);
        result.reports[gid] = phase1_trial(cfg, p, device, gid);
        break;
      }
      case Subcommand::Snowball:
        result.reports[gid] =
            snowball_trial(cfg, p, schedules[group], tags[group], gid);
        break;
      case Subcommand::Lattice:
        result.reports[gid] = lattice_trial(cfg, p, gid);
        break;
      case Subcommand::VerifyOracle:
        break;  // handled above
    }
  });

  // Per-p headline points: sweep means its chosen metric over successes,
  // lattice means crossing frequency, the builders mean their step counts.
  std::vector<std::pair<double, double>> fit_points;  // (p_s, mean)
  std::vector<std::pair<double, double>> points;      // plot axis
  for (size_t g = 0; g < cfg.p_s.size(); ++g) {
    const double p = cfg.p_s[g];
    double sum = 0.0;
    uint64_t n = 0;
    for (uint64_t t = 0; t < cfg.trials; ++t) {
      const auto& row = result.reports[g * cfg.trials + t];
      if (cfg.subcommand == Subcommand::Sweep) {
        if (!row.success) continue;
        sum += sweep_metric(row, cfg.metric);
      } else if (cfg.subcommand == Subcommand::Lattice) {
        sum += row.success ? 1.0 : 0.0;
      } else {
        sum += static_cast<double>(row.steps);
      }
      ++n;
    }
    if (n == 0) continue;
    const double mean = sum / static_cast<double>(n);
    const double x = cfg.subcommand == Subcommand::Lattice
                         ? phase3::bond_probability(
                               cfg.full_graph
                                   ? int64_t{1}
                                         << static_cast<unsigned>(std::max(
                                                2, phase1::target_level(p)))
                                   : resolve_snowball_size(cfg, p),
                               p)
                         : std::log2(1.0 / p);
    fit_points.emplace_back(p, mean);
    points.emplace_back(x, mean);
  }

  if (cfg.subcommand == Subcommand::Sweep)
    result.fit = metrics::scaling_fit(fit_points);

  std::ostringstream csv;
  csv << kTrialCsvHeader << '\n';
  for (const auto& row : result.reports) csv_row(csv, row);
  result.trial_csv = csv.str();
  result.summary_csv = render_summary(cfg, result.reports, result.fit);

  if (cfg.emit_svg && !points.empty()) {
    const std::string x_label = cfg.subcommand == Subcommand::Lattice
                                    ? "bond probability"
                                    : "log2(1/p_s)";
    const std::string y_label = cfg.subcommand == Subcommand::Lattice
                                    ? "crossing frequency"
                                    : metric_label;
    result.svg = render_svg(points, x_label, y_label);
  }
  return result;
}

}  // namespace snowsim::runner
