#include "snowsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "snowsim/errors.hpp"

namespace snowsim::metrics {

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const auto idx = static_cast<size_t>(
      std::llround(q * static_cast<double>(sorted.size() - 1)));
  return sorted[idx];
}

}  // namespace

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
  std::set<double> distinct;
  for (const auto& [p, value] : points) {
    (void)value;
    if (!(p > 0.0) || p > 1.0)
      throw SimError(ErrorCode::InvalidArgument, "p_s must be in (0, 1]");
    distinct.insert(p);
  }
  if (distinct.size() < 3)
    throw SimError(ErrorCode::InsufficientData,
                   "insufficient data: need at least 3 distinct p_s values");

  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [p, y] : points) {
    const double x = std::log2(1.0 / p);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }

  ScalingFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;

  double sq = 0.0;
  for (const auto& [p, y] : points) {
    const double x = std::log2(1.0 / p);
    const double r = y - (fit.slope * x + fit.intercept);
    sq += r * r;
  }
  fit.residual = std::sqrt(sq / n);
  return fit;
}

std::vector<SummaryRow> aggregate(const std::vector<TrialReport>& reports) {
  if (reports.empty()) throw SimError(ErrorCode::NoTrials, "no trials");

  struct Field {
    const char* name;
    double (*get)(const TrialReport&);
  };
  static constexpr Field kFields[] = {
      {"steps", [](const TrialReport& r) { return static_cast<double>(r.steps); }},
      {"final_size",
       [](const TrialReport& r) { return static_cast<double>(r.final_size); }},
      {"age_oldest",
       [](const TrialReport& r) { return static_cast<double>(r.age_oldest); }},
      {"max_error_weight",
       [](const TrialReport& r) {
         return static_cast<double>(r.max_error_weight);
       }},
      {"z_measurements",
       [](const TrialReport& r) {
         return static_cast<double>(r.z_measurements);
       }},
      {"diameter",
       [](const TrialReport& r) { return static_cast<double>(r.diameter); }},
      {"success", [](const TrialReport& r) { return r.success ? 1.0 : 0.0; }},
  };

  std::vector<SummaryRow> rows;
  rows.reserve(std::size(kFields));
  std::vector<double> values(reports.size());
  for (const Field& field : kFields) {
    for (size_t i = 0; i < reports.size(); ++i) values[i] = field.get(reports[i]);
    // Summing in sorted order keeps the mean independent of input order.
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;

    SummaryRow row;
    row.metric = field.name;
    row.count = static_cast<int64_t>(values.size());
    row.mean = sum / static_cast<double>(values.size());
    row.median = quantile(values, 0.5);
    row.q25 = quantile(values, 0.25);
    row.q75 = quantile(values, 0.75);
    row.min = values.front();
    row.max = values.back();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace snowsim::metrics
