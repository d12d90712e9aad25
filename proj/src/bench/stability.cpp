#include "qnnbench/bench/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qnnbench::bench {

StabilityTerms stability_terms(const qnn::LossHistory &history) {
  if (history.values.size() < kFinalIteration)
    throw std::invalid_argument("stability_terms: history shorter than " +
                                std::to_string(kFinalIteration) + " iterations");
  const auto &v = history.values;
  // 0-based slice [10, 25) is iterations 11..25
  const std::size_t first = kSettleIteration, last = kFinalIteration;
  const double n = static_cast<double>(last - first);
  // shifted by the first window value so a flat window gives exactly 0;
  // rounding noise would otherwise survive the min-max normalisation
  const double origin = v[first];
  double mean = 0.0;
  for (std::size_t i = first; i < last; ++i)
    mean += v[i] - origin;
  mean /= n;
  double var = 0.0;
  for (std::size_t i = first; i < last; ++i)
    var += (v[i] - origin - mean) * (v[i] - origin - mean);

  StabilityTerms t;
  t.sd = std::sqrt(var / n);
  // increases from iteration 10->11 onwards
  for (std::size_t i = first; i < last; ++i)
    t.ms = std::max(t.ms, v[i] - v[i - 1]);
  t.fl = v[last - 1];
  return t;
}

std::vector<StabilityMetrics>
score_stability(const std::vector<std::pair<std::string, StabilityTerms>> &terms) {
  std::vector<StabilityMetrics> out(terms.size());
  if (terms.empty())
    return out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out[i].name = terms[i].first;
    out[i].sd = terms[i].second.sd;
    out[i].ms = terms[i].second.ms;
    out[i].fl = terms[i].second.fl;
  }
  auto normalise = [&](double StabilityMetrics::*field) {
    double lo = out[0].*field, hi = out[0].*field;
    for (const auto &m : out) {
      lo = std::min(lo, m.*field);
      hi = std::max(hi, m.*field);
    }
    for (auto &m : out)
      m.sc += hi > lo ? (m.*field - lo) / (hi - lo) : 0.0;
  };
  normalise(&StabilityMetrics::sd);
  normalise(&StabilityMetrics::ms);
  normalise(&StabilityMetrics::fl);

  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out[a].sc < out[b].sc; });
  for (std::size_t r = 0; r < order.size(); ++r)
    out[order[r]].rank = static_cast<int>(r) + 1;
  return out;
}

std::vector<StabilityMetrics> stability_scores(const std::vector<ConfigHistories> &histories) {
  if (histories.empty())
    throw std::invalid_argument("stability_scores: no configs");
  auto sizes_of = [](const ConfigHistories &c) {
    std::set<std::size_t> s;
    for (const auto &[size, h] : c.by_size)
      if (!s.insert(size).second)
        throw std::invalid_argument("stability_scores: duplicate size " + std::to_string(size) +
                                    " for " + c.name);
    return s;
  };
  const auto reference = sizes_of(histories.front());
  if (reference.empty())
    throw std::invalid_argument("stability_scores: no sizes for " + histories.front().name);

  std::vector<std::pair<std::string, StabilityTerms>> terms;
  for (const auto &c : histories) {
    if (sizes_of(c) != reference)
      throw std::invalid_argument("stability_scores: size set of " + c.name +
                                  " differs from " + histories.front().name);
    StabilityTerms avg;
    for (const auto &[size, h] : c.by_size) {
      const auto t = stability_terms(h);
      avg.sd += t.sd;
      avg.ms += t.ms;
      avg.fl += t.fl;
    }
    const double n = static_cast<double>(c.by_size.size());
    avg.sd /= n;
    avg.ms /= n;
    avg.fl /= n;
    terms.emplace_back(c.name, avg);
  }
  return score_stability(terms);
}

} // namespace qnnbench::bench
