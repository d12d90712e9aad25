#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qnnbench/core/matrix.hpp"
#include "qnnbench/data/dataset.hpp"

namespace qnnbench::data {

// Per-column extrema in original units, fitted on a training split only.
struct ScalerParams {
  std::array<double, kNumColumns> min{};
  std::array<double, kNumColumns> max{};

  bool operator==(const ScalerParams &) const = default;
};

struct ScalerFit {
  ScalerParams params;
  std::vector<std::string> warnings; // one per constant column
};

// Throws std::invalid_argument on an empty row set.
ScalerFit minmax_fit(std::span<const SamplePoint> train);

// (x - min) / (max - min). A constant column (max == min) maps to 0. No
// clamping: rows outside the fitted range scale outside [0, 1].
double minmax_scale(const ScalerParams &params, std::size_t column, double value);
double minmax_invert(const ScalerParams &params, std::size_t column, double scaled);
double minmax_invert_target(const ScalerParams &params, double scaled);

struct ScaledData {
  Matrix X;              // rows x kNumFeatures
  std::vector<double> y; // scaled target
};

ScaledData minmax_apply(const ScalerParams &params, std::span<const SamplePoint> rows);

} // namespace qnnbench::data
