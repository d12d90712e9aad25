#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qnnbench::bench {

struct TimePoint {
  double size = 0.0;    // training-set size
  double minutes = 0.0;
};

// time = slope * size + intercept, by ordinary least squares.
struct TimeModel {
  double slope = 0.0;     // minutes per sample
  double intercept = 0.0; // minutes
  double fit_r2 = 0.0;    // 1 when the response has zero variance and is fit exactly
};

// Throws std::invalid_argument with fewer than 2 distinct sizes.
TimeModel fit_time_model(std::span<const TimePoint> points);

// 1-based rank ascending by slope; ties go to the earlier model.
std::vector<int> rank_by_slope(std::span<const TimeModel> models);

struct TimingSample {
  double mean_minutes = 0.0;
  double std_minutes = 0.0; // population, over repeats
  std::vector<double> runs;
};

// Runs `job` `warmup` times untimed, then `repeats` times back to back on the
// calling thread, recording the wall-clock duration of each timed run.
// Throws std::invalid_argument if repeats < 1 or warmup < 0.
TimingSample measure_training_time(const std::function<void()> &job, int repeats = 1,
                                   int warmup = 0);

} // namespace qnnbench::bench
