#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qnnbench::bench {

// Assignment of n samples to k folds: seeded shuffle, then contiguous
// chunks. The first n % k folds hold one extra sample.
struct FoldPlan {
  std::size_t n_samples = 0;
  int k = 5;
  std::uint64_t seed = 0;
  std::vector<int> assignment; // sample index -> fold id

  std::vector<std::size_t> validation_indices(int fold) const;
  std::vector<std::size_t> training_indices(int fold) const;
  std::size_t fold_size(int fold) const;
};

// Throws std::invalid_argument if k < 2 or n < k.
FoldPlan kfold_plan(std::size_t n, int k, std::uint64_t seed);

} // namespace qnnbench::bench
