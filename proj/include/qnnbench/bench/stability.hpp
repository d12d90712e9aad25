#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qnnbench/qnn/regressor.hpp"

namespace qnnbench::bench {

// Raw per-history terms. Iterations are 1-based; the window starts after the
// initial convergence phase (iteration 10).
struct StabilityTerms {
  double sd = 0.0; // population std-dev of loss over iterations 11..25
  double ms = 0.0; // largest positive step-to-step increase after iteration 10
  double fl = 0.0; // loss at iteration 25
};

inline constexpr std::size_t kSettleIteration = 10;
inline constexpr std::size_t kFinalIteration = 25;

// Throws std::invalid_argument if the history is shorter than 25 entries.
StabilityTerms stability_terms(const qnn::LossHistory &history);

struct StabilityMetrics {
  std::string name;
  double sd = 0.0; // averaged over sizes, before normalisation
  double ms = 0.0;
  double fl = 0.0;
  double sc = 0.0; // sum of the three min-max normalised terms, in [0, 3]
  int rank = 0;    // 1 = most stable; ties go to the earlier entry
};

// Min-max normalise each column across entries (0/0 -> 0), sum, rank.
// Output is in input order.
std::vector<StabilityMetrics>
score_stability(const std::vector<std::pair<std::string, StabilityTerms>> &terms);

struct ConfigHistories {
  std::string name;
  std::vector<std::pair<std::size_t, qnn::LossHistory>> by_size;
};

// Averages the terms over sizes per config, then scores. Every config must
// cover the same non-empty set of sizes; otherwise std::invalid_argument.
std::vector<StabilityMetrics> stability_scores(const std::vector<ConfigHistories> &histories);

} // namespace qnnbench::bench
