#include "qnnbench/bench/folds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qnnbench/core/random.hpp"

namespace qnnbench::bench {

FoldPlan kfold_plan(std::size_t n, int k, std::uint64_t seed) {
  if (k < 2)
    throw std::invalid_argument("kfold_plan: k must be >= 2");
  if (n < static_cast<std::size_t>(k))
    throw std::invalid_argument("kfold_plan: fewer samples than folds");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);

  FoldPlan plan;
  plan.n_samples = n;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.assign(n, 0);
  const std::size_t base = n / static_cast<std::size_t>(k);
  const std::size_t extra = n % static_cast<std::size_t>(k);
  std::size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    const std::size_t len = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
    for (std::size_t j = 0; j < len; ++j)
      plan.assignment[order[pos++]] = f;
  }
  return plan;
}

std::vector<std::size_t> FoldPlan::validation_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == fold)
      out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldPlan::training_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] != fold)
      out.push_back(i);
  return out;
}

std::size_t FoldPlan::fold_size(int fold) const {
  return static_cast<std::size_t>(std::count(assignment.begin(), assignment.end(), fold));
}

} // namespace qnnbench::bench
