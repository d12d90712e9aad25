#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qnnbench/data/dataset.hpp"

namespace qnnbench::data {

struct SyntheticOptions {
  double rated_power_kw = 2030.0;
  double midpoint_ms = 8.0; // logistic midpoint; gives ~20 kW at 3 m/s, ~2000 kW at 13 m/s
  double slope_ms = 1.1;
  double noise_kw = 25.0;   // standard deviation of additive Gaussian noise
};

// Noise-free turbine response to wind speed: a logistic power curve.
double synthetic_power_curve(double velocity, const SyntheticOptions &options = {});

// Temperature, pressure and direction are uniform over the reference ranges;
// velocity is Weibull(k=2, scale 9.7 m/s) clipped to the reference range.
// Power is the logistic curve plus seeded Gaussian noise, clipped at 0.
std::vector<SamplePoint> gen_synthetic(std::size_t size, std::uint64_t seed,
                                       const SyntheticOptions &options = {});

} // namespace qnnbench::data
