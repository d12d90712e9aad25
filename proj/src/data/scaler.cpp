#include "qnnbench/data/scaler.hpp"

#include <algorithm>
#include <stdexcept>

namespace qnnbench::data {

ScalerFit minmax_fit(std::span<const SamplePoint> train) {
  if (train.empty())
    throw std::invalid_argument("minmax_fit: no training rows");
  ScalerFit fit;
  for (std::size_t c = 0; c < kNumColumns; ++c) {
    double lo = column_value(train.front(), c);
    double hi = lo;
    for (const auto &p : train) {
      const double v = column_value(p, c);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    fit.params.min[c] = lo;
    fit.params.max[c] = hi;
    if (hi == lo)
      fit.warnings.push_back("column " + std::string(kColumnNames[c]) +
                             " is constant; scaled values set to 0");
  }
  return fit;
}

double minmax_scale(const ScalerParams &params, std::size_t column, double value) {
  const double span = params.max[column] - params.min[column];
  if (span == 0.0)
    return 0.0;
  return (value - params.min[column]) / span;
}

double minmax_invert(const ScalerParams &params, std::size_t column, double scaled) {
  return params.min[column] + scaled * (params.max[column] - params.min[column]);
}

double minmax_invert_target(const ScalerParams &params, double scaled) {
  return minmax_invert(params, kTargetColumn, scaled);
}

ScaledData minmax_apply(const ScalerParams &params, std::span<const SamplePoint> rows) {
  ScaledData out{Matrix(rows.size(), kNumFeatures), std::vector<double>(rows.size())};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < kNumFeatures; ++c)
      out.X(r, c) = minmax_scale(params, c, column_value(rows[r], c));
    out.y[r] = minmax_scale(params, kTargetColumn, rows[r].power);
  }
  return out;
}

} // namespace qnnbench::data
