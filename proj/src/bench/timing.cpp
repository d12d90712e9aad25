#include "qnnbench/bench/timing.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qnnbench/bench/metrics.hpp"

namespace qnnbench::bench {

TimeModel fit_time_model(std::span<const TimePoint> points) {
  std::set<double> distinct;
  for (const auto &p : points)
    distinct.insert(p.size);
  if (distinct.size() < 2)
    throw std::invalid_argument("fit_time_model: need at least 2 distinct sizes");

  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto &p : points) {
    mx += p.size;
    my += p.minutes;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto &p : points) {
    sxx += (p.size - mx) * (p.size - mx);
    sxy += (p.size - mx) * (p.minutes - my);
    syy += (p.minutes - my) * (p.minutes - my);
  }
  TimeModel m;
  m.slope = sxy / sxx;
  m.intercept = my - m.slope * mx;
  double ss_res = 0.0;
  for (const auto &p : points) {
    const double r = p.minutes - (m.slope * p.size + m.intercept);
    ss_res += r * r;
  }
  m.fit_r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return m;
}

std::vector<int> rank_by_slope(std::span<const TimeModel> models) {
  std::vector<std::size_t> order(models.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return models[a].slope < models[b].slope;
  });
  std::vector<int> rank(models.size());
  for (std::size_t r = 0; r < order.size(); ++r)
    rank[order[r]] = static_cast<int>(r) + 1;
  return rank;
}

TimingSample measure_training_time(const std::function<void()> &job, int repeats, int warmup) {
  if (repeats < 1)
    throw std::invalid_argument("measure_training_time: repeats must be >= 1");
  if (warmup < 0)
    throw std::invalid_argument("measure_training_time: warmup must be >= 0");
  for (int w = 0; w < warmup; ++w)
    job();
  TimingSample s;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    job();
    const auto t1 = std::chrono::steady_clock::now();
    s.runs.push_back(std::chrono::duration<double>(t1 - t0).count() / 60.0);
  }
  const auto ms = mean_std(s.runs);
  s.mean_minutes = ms.mean;
  s.std_minutes = ms.std_dev;
  return s;
}

} // namespace qnnbench::bench
