#include "qnnbench/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnnbench::bench {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b, const char *who) {
  if (a.empty())
    throw std::invalid_argument(std::string(who) + ": empty input");
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(who) + ": length mismatch");
}

} // namespace

MetricPair compute_metrics(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pair(y_true, y_pred, "compute_metrics");
  const double n = static_cast<double>(y_true.size());
  double mean = 0.0;
  for (double v : y_true)
    mean += v;
  mean /= n;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    ss_res += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
    ss_tot += (y_true[i] - mean) * (y_true[i] - mean);
  }
  MetricPair m;
  m.rmse = std::sqrt(ss_res / n);
  if (ss_tot > 0.0)
    m.r2 = 1.0 - ss_res / ss_tot;
  return m;
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty())
    return {};
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values)
    mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values)
    var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / n)};
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  Histogram h;
  if (bins == 0)
    throw std::invalid_argument("histogram: zero bins");
  h.counts.assign(bins, 0);
  if (values.empty())
    return h;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  h.lo = *lo;
  h.hi = *hi;
  const double width = (h.hi - h.lo) / static_cast<double>(bins);
  for (double v : values) {
    std::size_t b = width > 0.0 ? static_cast<std::size_t>((v - h.lo) / width) : 0;
    h.counts[std::min(b, bins - 1)]++;
  }
  return h;
}

ResidualStats residual_stats(std::span<const double> y_true, std::span<const double> y_pred,
                             std::size_t bins) {
  check_pair(y_true, y_pred, "residual_stats");
  std::vector<double> residuals(y_true.size());
  for (std::size_t i = 0; i < y_true.size(); ++i)
    residuals[i] = y_pred[i] - y_true[i];
  const auto ms = mean_std(residuals);
  return {ms.mean, ms.std_dev, histogram(residuals, bins)};
}

} // namespace qnnbench::bench
