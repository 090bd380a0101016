#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace snowsim::metrics {

/// One simulated trial, whatever the phase. Field order mirrors the harness
/// CSV schema; on failure final_size refers to the largest surviving
/// fragment.
struct TrialReport {
  int64_t trial_id = 0;
  std::string phase;
  double p_s = 0.0;
  std::string strategy;
  int64_t steps = 0;
  int64_t final_size = 0;
  int64_t age_oldest = 0;
  int64_t max_error_weight = 0;
  int64_t z_measurements = 0;
  int64_t diameter = 0;
  bool success = false;
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the fit residuals
};

/// Least-squares fit of a metric against log2(1/p_s), the natural axis for
/// the logarithmic-accumulation claims. Points are (p_s, value) pairs and at
/// least three distinct p_s values are required.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points);

struct SummaryRow {
  std::string metric;
  int64_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Order-insensitive summary statistics, one row per tracked counter in a
/// fixed order (steps, final_size, age_oldest, max_error_weight,
/// z_measurements, diameter, success). Quantile q reads the sorted values at
/// index round(q * (n - 1)); success aggregates as a 0/1 indicator, so its
/// mean is the success rate.
std::vector<SummaryRow> aggregate(const std::vector<TrialReport>& reports);

}  // namespace snowsim::metrics
