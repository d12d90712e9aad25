#include "qnnbench/data/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "qnnbench/core/random.hpp"

namespace qnnbench::data {

double synthetic_power_curve(double velocity, const SyntheticOptions &options) {
  return options.rated_power_kw /
         (1.0 + std::exp(-(velocity - options.midpoint_ms) / options.slope_ms));
}

std::vector<SamplePoint> gen_synthetic(std::size_t size, std::uint64_t seed,
                                       const SyntheticOptions &options) {
  constexpr double kWeibullShape = 2.0;
  constexpr double kWeibullScale = 9.7;
  const auto &r = kReferenceRanges;

  Rng rng(seed);
  std::vector<SamplePoint> rows;
  rows.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    SamplePoint p;
    p.temperature = rng.uniform(r[0].min, r[0].max);
    p.pressure = rng.uniform(r[1].min, r[1].max);
    p.direction = rng.uniform(r[2].min, r[2].max);
    const double u = rng.uniform();
    const double v = kWeibullScale * std::pow(-std::log1p(-u), 1.0 / kWeibullShape);
    p.velocity = std::clamp(v, r[3].min, r[3].max);
    const double noise = options.noise_kw > 0.0 ? options.noise_kw * rng.normal() : 0.0;
    p.power = std::max(0.0, synthetic_power_curve(p.velocity, options) + noise);
    rows.push_back(p);
  }
  return rows;
}

} // namespace qnnbench::data
