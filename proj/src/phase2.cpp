#include "snowsim/phase2.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace snowsim::phase2 {

namespace {

constexpr int kRoundFusions[4] = {8, 4, 2, 1};
constexpr double kSizeEps = 1e-9;

int64_t flake_leaf_count(int level) {
  if (level == 0) return 1;
  if (level == 1) return 2;
  return int64_t{1} << (level - 1);
}

}  // namespace

const char* model_name(AttemptModel m) {
  return m == AttemptModel::ParallelBurst ? "parallel_burst" : "sequential_budget";
}

std::optional<AttemptModel> model_from_name(std::string_view name) {
  if (name == "parallel_burst") return AttemptModel::ParallelBurst;
  if (name == "sequential_budget") return AttemptModel::SequentialBudget;
  return std::nullopt;
}

std::vector<QubitId> Snowball::perimeter() const {
  std::vector<QubitId> vs = graph.vertices();
  if (vs.size() == 1) return vs;
  std::vector<QubitId> out;
  for (QubitId v : vs)
    if (graph.degree(v) == 1) out.push_back(v);
  return out;
}

double Snowball::size_per_p() const {
  return static_cast<double>(graph.vertex_count()) * p_s;
}

Snowball make_template_snowflake(int level, double p_s, QubitId id_base) {
  if (level < 0 || level > 30)
    throw SimError(ErrorCode::InvalidArgument, "level out of range");
  const int64_t n = int64_t{1} << level;

  // Replay the growth rounds on an abstract tree first.
  struct AbsEdge {
    int64_t u, v;
    TimeStep birth;
  };
  std::vector<AbsEdge> abs_edges;
  std::vector<std::vector<int64_t>> adj(n);
  std::vector<int64_t> roots(n);
  std::iota(roots.begin(), roots.end(), 0);
  for (int round = 0; round < level; ++round) {
    std::vector<int64_t> next;
    for (size_t i = 0; i + 1 < roots.size(); i += 2) {
      abs_edges.push_back({roots[i], roots[i + 1], round});
      adj[roots[i]].push_back(roots[i + 1]);
      adj[roots[i + 1]].push_back(roots[i]);
      next.push_back(roots[i]);
    }
    roots = std::move(next);
  }

  // Breadth-first ids from the root keep low ids near the root, which keeps
  // kept fusion edges short later: perimeter pairs fire lowest ids first.
  std::vector<int64_t> label(n, -1);
  std::deque<int64_t> queue{0};
  label[0] = 0;
  int64_t next_label = 1;
  while (!queue.empty()) {
    int64_t u = queue.front();
    queue.pop_front();
    std::vector<int64_t> nbrs = adj[u];
    std::sort(nbrs.begin(), nbrs.end());
    for (int64_t w : nbrs)
      if (label[w] < 0) {
        label[w] = next_label++;
        queue.push_back(w);
      }
  }

  GraphState g;
  for (int64_t k = 0; k < n; ++k) g.add_vertex_with_id(id_base + k, 0);
  std::sort(abs_edges.begin(), abs_edges.end(), [&](const AbsEdge& x, const AbsEdge& y) {
    if (x.birth != y.birth) return x.birth < y.birth;
    return std::min(label[x.u], label[x.v]) < std::min(label[y.u], label[y.v]);
  });
  for (const AbsEdge& e : abs_edges) {
    g.set_current_step(e.birth);
    g.apply_fusion_success(id_base + label[e.u], id_base + label[e.v]);
  }
  g.set_current_step(level);

  Snowball s;
  s.graph = std::move(g);
  s.p_s = p_s;
  s.build_level = 0;
  return s;
}

double burst_success_probability(double p_s, int64_t budget) {
  if (!(p_s > 0.0) || p_s > 1.0)
    throw SimError(ErrorCode::InvalidArgument, "p_s must be in (0, 1]");
  if (budget < 1)
    throw SimError(ErrorCode::InvalidArgument, "budget must be positive");
  return 1.0 - std::pow(1.0 - p_s, static_cast<double>(budget));
}

std::vector<char> draw_pair_outcomes(RandomStream& rng, int64_t budget, double p_s) {
  if (budget < 1)
    throw SimError(ErrorCode::InvalidArgument, "budget must be positive");
  std::vector<char> out(static_cast<size_t>(budget));
  for (char& o : out) o = rng.bernoulli(p_s) ? 1 : 0;
  return out;
}

FusionResult fuse_snowballs_staged(Snowball& a, Snowball& b,
                                   const std::vector<char>& outcomes,
                                   AttemptModel model) {
  const int64_t budget = static_cast<int64_t>(outcomes.size());
  if (budget < 1)
    throw SimError(ErrorCode::InvalidArgument, "budget must be positive");
  std::vector<QubitId> pa = a.perimeter();
  std::vector<QubitId> pb = b.perimeter();
  if (budget > static_cast<int64_t>(pa.size()) ||
      budget > static_cast<int64_t>(pb.size()))
    throw SimError(ErrorCode::InsufficientPerimeter, "insufficient perimeter");

  FusionResult res;
  if (model == AttemptModel::SequentialBudget) {
    // Pairs are fixed up front and fire one at a time until a success.
    for (int64_t i = 0; i < budget; ++i) {
      if (outcomes[static_cast<size_t>(i)]) {
        a.graph.absorb(b.graph);
        a.graph.apply_fusion_success(pa[static_cast<size_t>(i)],
                                     pb[static_cast<size_t>(i)]);
        res.success = true;
        return res;
      }
      a.graph.remove_vertex(pa[static_cast<size_t>(i)]);
      b.graph.remove_vertex(pb[static_cast<size_t>(i)]);
      res.consumed += 2;
    }
    return res;
  }

  // Parallel burst: every pair fires at once.
  int64_t first_success = -1;
  for (int64_t i = 0; i < budget; ++i)
    if (outcomes[static_cast<size_t>(i)]) {
      first_success = i;
      break;
    }
  if (first_success < 0) {
    for (int64_t i = 0; i < budget; ++i) {
      a.graph.remove_vertex(pa[static_cast<size_t>(i)]);
      b.graph.remove_vertex(pb[static_cast<size_t>(i)]);
    }
    res.consumed = 2 * budget;
    return res;
  }
  a.graph.absorb(b.graph);
  for (int64_t i = 0; i < budget; ++i) {
    const QubitId qa = pa[static_cast<size_t>(i)];
    const QubitId qb = pb[static_cast<size_t>(i)];
    if (!outcomes[static_cast<size_t>(i)]) {
      a.graph.apply_fusion_failure(qa, qb);
      res.consumed += 2;
    } else if (i == first_success) {
      a.graph.apply_fusion_success(qa, qb);
    } else {
      // Surplus success: keep only the first edge so the object stays a
      // tree; the extra edge is cut by measuring out one endpoint.
      a.graph.apply_fusion_success(qa, qb);
      a.graph.measure_z(qb);
      res.consumed += 1;
    }
  }
  res.success = true;
  return res;
}

FusionResult fuse_snowballs(Snowball& a, Snowball& b, int64_t budget,
                            AttemptModel model, double p_s, RandomStream& rng) {
  if (!(p_s > 0.0) || p_s > 1.0)
    throw SimError(ErrorCode::InvalidArgument, "p_s must be in (0, 1]");
  return fuse_snowballs_staged(a, b, draw_pair_outcomes(rng, budget, p_s), model);
}

namespace {

// Shared core of eager and conditioned builds. When condition_on_success is
// set, each fusion's outcome vector is redrawn until it contains a success,
// which samples exactly the conditional law given that every fusion lands.
std::pair<std::optional<Snowball>, BuildReport> build_snowball_impl(
    std::vector<Snowball> objs, const AllocationSchedule& schedule, double p_s,
    RandomStream& rng, bool condition_on_success) {
  if (objs.size() != 16)
    throw SimError(ErrorCode::InvalidArgument, "need exactly 16 snowflakes");
  for (int64_t b : schedule.budgets)
    if (b < 1)
      throw SimError(ErrorCode::InvalidArgument, "budget must be positive");
  if (!(p_s > 0.0) || p_s > 1.0)
    throw SimError(ErrorCode::InvalidArgument, "p_s must be in (0, 1]");

  BuildReport rep;
  TimeStep step_base = 0;
  for (const Snowball& s : objs)
    step_base = std::max(step_base, s.graph.current_step());

  bool failed = false;
  for (int round = 1; round <= 4 && !failed; ++round) {
    rep.rounds_attempted = round;
    const int64_t budget = schedule.budgets[static_cast<size_t>(round - 1)];
    std::vector<Snowball> survivors;
    bool round_failed = false;
    for (size_t i = 0; i + 1 < objs.size(); i += 2) {
      Snowball& a = objs[i];
      Snowball& b = objs[i + 1];
      a.graph.set_current_step(step_base + round - 1);
      std::vector<char> outcomes = draw_pair_outcomes(rng, budget, p_s);
      if (condition_on_success) {
        while (std::find(outcomes.begin(), outcomes.end(), char{1}) == outcomes.end())
          outcomes = draw_pair_outcomes(rng, budget, p_s);
      }
      FusionResult fr = fuse_snowballs_staged(a, b, outcomes, schedule.model);
      rep.consumed_total += fr.consumed;
      if (fr.success) {
        a.build_level = round;
        survivors.push_back(std::move(a));
      } else {
        round_failed = true;
        if (a.graph.vertex_count() > 0) survivors.push_back(std::move(a));
        if (b.graph.vertex_count() > 0) survivors.push_back(std::move(b));
      }
    }
    objs = std::move(survivors);
    if (round_failed) {
      failed = true;
    } else {
      double total = 0.0;
      for (const Snowball& s : objs) total += s.size_per_p();
      rep.level_sizes_per_p[static_cast<size_t>(round - 1)] =
          total / static_cast<double>(objs.size());
    }
  }

  // Report the finished snowball, or the largest surviving fragment.
  const Snowball* subject = nullptr;
  for (const Snowball& s : objs) {
    rep.z_measurements += s.graph.z_measurement_count();
    if (!subject || s.graph.vertex_count() > subject->graph.vertex_count())
      subject = &s;
  }
  if (subject) {
    rep.final_size = static_cast<int64_t>(subject->graph.vertex_count());
    rep.diameter = subject->graph.vertex_count() > 0
                       ? subject->graph.induced_diameter(subject->graph.vertices())
                       : 0;
    for (QubitId v : subject->graph.vertices())
      rep.max_error_weight = std::max(rep.max_error_weight, subject->graph.error_weight(v));
  }
  if (failed) return {std::nullopt, rep};

  rep.success = true;
  Snowball ball = std::move(objs.front());
  return {std::move(ball), rep};
}

}  // namespace

std::pair<std::optional<Snowball>, BuildReport> build_snowball(
    std::vector<Snowball> flakes, const AllocationSchedule& schedule,
    double p_s, RandomStream& rng) {
  return build_snowball_impl(std::move(flakes), schedule, p_s, rng, false);
}

int64_t max_pairwise_path(const Snowball& s) {
  return s.graph.induced_diameter(s.graph.vertices());
}

namespace {

// Expected qubits destroyed by one successful fusion round.
double expected_consumed_on_success(double p, int64_t b, AttemptModel model) {
  const double q = 1.0 - std::pow(1.0 - p, static_cast<double>(b));
  if (model == AttemptModel::ParallelBurst) {
    const double mean_successes = static_cast<double>(b) * p / q;
    return 2.0 * static_cast<double>(b) - mean_successes - 1.0;
  }
  // E[first-success index | success]: sum j (1-p)^(j-1) p over j = 1..b,
  // divided by q, with the geometric series summed in closed form.
  const double x = 1.0 - p;
  const double xb = std::pow(x, static_cast<double>(b));
  const double raw = (1.0 - (static_cast<double>(b) + 1.0) * xb +
                      static_cast<double>(b) * xb * x) / p;
  const double mean_first = raw / q;
  return 2.0 * (mean_first - 1.0);
}

}  // namespace

std::optional<SchedulePoint> evaluate_schedule(double p_s, AttemptModel model,
                                               const std::array<int64_t, 4>& budgets) {
  const int level = phase1::target_level(p_s);
  double size = std::ldexp(1.0, level);
  // Worst-case perimeter: every round loses its full allocation on both
  // sides. Promotions at runtime only add perimeter, so this caps budgets
  // conservatively.
  int64_t perimeter = flake_leaf_count(level);
  double prob = 1.0;
  for (size_t i = 0; i < 4; ++i) {
    const int64_t b = budgets[i];
    if (b < 1 || b > perimeter) return std::nullopt;
    prob *= std::pow(burst_success_probability(p_s, b),
                     static_cast<double>(kRoundFusions[i]));
    size = 2.0 * size - expected_consumed_on_success(p_s, b, model);
    perimeter = 2 * perimeter - 2 * b;
  }
  SchedulePoint pt;
  pt.budgets = budgets;
  pt.size_per_p = size * p_s;
  pt.success_probability = prob;
  return pt;
}

namespace {

bool point_beats(const SchedulePoint& x, const SchedulePoint& y) {
  if (x.success_probability != y.success_probability)
    return x.success_probability > y.success_probability;
  return x.budgets < y.budgets;
}

// Coordinate descent from one start; stays inside the size constraint.
std::optional<SchedulePoint> descend(double p_s, AttemptModel model,
                                     std::array<int64_t, 4> budgets, double target) {
  auto cur = evaluate_schedule(p_s, model, budgets);
  if (!cur || cur->size_per_p < target - kSizeEps) return std::nullopt;
  bool improved = true;
  while (improved) {
    improved = false;
    for (size_t i = 0; i < 4; ++i) {
      for (int64_t v = 1;; ++v) {
        std::array<int64_t, 4> trial = budgets;
        trial[i] = v;
        auto pt = evaluate_schedule(p_s, model, trial);
        if (!pt) break;  // beyond this coordinate's perimeter cap
        if (pt->size_per_p < target - kSizeEps) continue;
        if (point_beats(*pt, *cur)) {
          cur = pt;
          budgets = trial;
          improved = true;
        }
      }
    }
  }
  return cur;
}

std::vector<std::array<int64_t, 4>> standard_starts(double p_s) {
  std::vector<std::array<int64_t, 4>> starts = {
      {1, 1, 1, 1}, {2, 2, 2, 2}, {4, 4, 4, 4}, {8, 8, 8, 8}};
  // Half of the worst-case perimeter at each round.
  std::array<int64_t, 4> half{};
  int64_t perimeter = flake_leaf_count(phase1::target_level(p_s));
  for (size_t i = 0; i < 4; ++i) {
    half[i] = std::max<int64_t>(1, perimeter / 2);
    perimeter = std::max<int64_t>(0, 2 * perimeter - 2 * half[i]);
  }
  starts.push_back(half);
  return starts;
}

std::optional<SchedulePoint> best_over_starts(
    double p_s, AttemptModel model, double target,
    const std::vector<std::array<int64_t, 4>>& starts) {
  std::optional<SchedulePoint> best;
  for (const auto& s : starts) {
    auto pt = descend(p_s, model, s, target);
    if (pt && (!best || point_beats(*pt, *best))) best = pt;
  }
  return best;
}

std::vector<SchedulePoint> pareto_filter(std::vector<SchedulePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const SchedulePoint& x, const SchedulePoint& y) {
    if (x.size_per_p != y.size_per_p) return x.size_per_p > y.size_per_p;
    return x.success_probability > y.success_probability;
  });
  std::vector<SchedulePoint> keep;
  double best_prob = -1.0;
  for (const SchedulePoint& pt : pts) {
    if (pt.success_probability > best_prob) {
      keep.push_back(pt);
      best_prob = pt.success_probability;
    }
  }
  std::reverse(keep.begin(), keep.end());
  return keep;
}

}  // namespace

OptimizeResult optimize_schedule(double p_s, AttemptModel model,
                                 double target_size_per_p) {
  if (!(p_s > 0.0) || p_s > 0.5)
    throw SimError(ErrorCode::InvalidArgument, "p_s must be in (0, 1/2]");
  if (!(target_size_per_p >= 0.0))
    throw SimError(ErrorCode::InvalidArgument, "target size must be non-negative");

  OptimizeResult out;
  // All-ones maximizes expected size, so it decides feasibility outright.
  auto roof = evaluate_schedule(p_s, model, {1, 1, 1, 1});
  if (!roof)
    throw SimError(ErrorCode::Internal, "unit schedule must be evaluable");

  // Frontier: optimize across a descending grid of size targets, warm
  // starting each run with the previous optimum.
  const std::vector<std::array<int64_t, 4>> base = standard_starts(p_s);
  std::vector<SchedulePoint> collected;
  std::vector<std::array<int64_t, 4>> starts;
  const int kGrid = 160;
  for (int i = kGrid; i >= 1; --i) {
    const double t = roof->size_per_p * static_cast<double>(i) / kGrid;
    starts = base;
    if (!collected.empty()) starts.push_back(collected.back().budgets);
    auto pt = best_over_starts(p_s, model, t, starts);
    if (pt) collected.push_back(*pt);
  }

  if (roof->size_per_p < target_size_per_p - kSizeEps) {
    out.frontier = pareto_filter(std::move(collected));
    out.feasible = false;
    return out;
  }
  starts = base;
  for (const SchedulePoint& pt : collected) starts.push_back(pt.budgets);
  out.frontier = pareto_filter(std::move(collected));
  auto best = best_over_starts(p_s, model, target_size_per_p, starts);
  if (!best)
    throw SimError(ErrorCode::Internal, "feasible target lost during descent");
  out.feasible = true;
  out.schedule.budgets = best->budgets;
  out.schedule.model = model;
  out.model_size_per_p = best->size_per_p;
  out.model_success_probability = best->success_probability;
  return out;
}

MassBuildStats run_mass_builds(const MassBuildConfig& cfg) {
  const int level = phase1::target_level(cfg.p_s);
  for (int64_t b : cfg.schedule.budgets)
    if (b < 1)
      throw SimError(ErrorCode::InvalidArgument, "budget must be positive");

  std::vector<Snowball> proto;
  proto.reserve(16);
  for (uint64_t i = 0; i < 16; ++i)
    proto.push_back(make_template_snowflake(level, cfg.p_s,
                                            i << static_cast<unsigned>(level)));

  std::array<double, 4> round_prob{};
  for (size_t i = 0; i < 4; ++i)
    round_prob[i] = burst_success_probability(cfg.p_s, cfg.schedule.budgets[i]);

  MassBuildStats st;
  st.attempts = cfg.attempts;
  std::array<double, 4> size_sum{};
  double final_sum = 0.0;
  double consumed_sum = 0.0;

  // One sequential stream: spawning a fresh generator per attempt would
  // dominate the runtime at the attempt counts this driver is built for.
  RandomStream rng(cfg.seed);
  for (uint64_t t = 0; t < cfg.attempts; ++t) {
    if (cfg.fast_path) {
      // Success indicators first; almost every attempt stops here.
      bool pass = true;
      for (size_t i = 0; i < 4 && pass; ++i)
        for (int f = 0; f < kRoundFusions[i]; ++f)
          if (!rng.bernoulli(round_prob[i])) {
            pass = false;
            break;
          }
      if (!pass) continue;
    }
    try {
      auto [ball, rep] = build_snowball_impl(proto, cfg.schedule, cfg.p_s, rng,
                                             cfg.fast_path);
      if (!rep.success) continue;
      ++st.successes;
      for (size_t i = 0; i < 4; ++i) size_sum[i] += rep.level_sizes_per_p[i];
      final_sum += static_cast<double>(rep.final_size) * cfg.p_s;
      consumed_sum += static_cast<double>(rep.consumed_total);
      st.max_diameter = std::max(st.max_diameter, rep.diameter);
      st.max_error_weight = std::max(st.max_error_weight, rep.max_error_weight);
      st.success_diameters.push_back(rep.diameter);
    } catch (const SimError& e) {
      if (e.code() == ErrorCode::InsufficientPerimeter) {
        // The attempt burned real resources before running dry; it counts
        // as a failed attempt rather than vanishing from the denominator.
        ++st.perimeter_aborts;
        continue;
      }
      throw;
    }
  }
  if (st.successes > 0) {
    for (size_t i = 0; i < 4; ++i)
      st.mean_level_sizes_per_p[i] = size_sum[i] / static_cast<double>(st.successes);
    st.mean_final_size_per_p = final_sum / static_cast<double>(st.successes);
    st.mean_consumed = consumed_sum / static_cast<double>(st.successes);
  }
  return st;
}

}  // namespace snowsim::phase2
