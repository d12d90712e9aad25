#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qnnbench::bench {

struct MetricPair {
  std::optional<double> r2; // empty when the true values have zero variance
  double rmse = 0.0;        // in the units of the inputs (kW)
};

// r2 = 1 - SS_res / SS_tot, rmse = sqrt(mean squared error).
// Throws std::invalid_argument for empty or unequal-length inputs.
MetricPair compute_metrics(std::span<const double> y_true, std::span<const double> y_pred);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts; // equal-width bins over [lo, hi]
};

struct ResidualStats {
  double mean = 0.0;    // bias of (pred - true)
  double std_dev = 0.0; // population standard deviation
  Histogram histogram;
};

// Throws std::invalid_argument for empty or unequal-length inputs.
ResidualStats residual_stats(std::span<const double> y_true, std::span<const double> y_pred,
                             std::size_t bins = 20);

Histogram histogram(std::span<const double> values, std::size_t bins);

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0; // population
};

MeanStd mean_std(std::span<const double> values);

} // namespace qnnbench::bench
