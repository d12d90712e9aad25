#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qnnbench/core/matrix.hpp"

namespace qnnbench::baselines {

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;
  std::size_t rank = 0;        // numerical rank of the centred design
  bool rank_deficient = false; // minimum-norm solution was returned

  double predict(std::span<const double> x) const;
  std::vector<double> predict(const Matrix &X) const;
};

// Ordinary least squares with intercept. Columns and target are centred,
// the centred system is solved by a complete orthogonal decomposition
// (minimum-norm for rank-deficient designs), and the intercept restores the
// means. A constant column therefore gets weight 0.
// Throws std::invalid_argument unless rows > cols and shapes agree.
LinearModel ols_fit(const Matrix &X, std::span<const double> y);

} // namespace qnnbench::baselines
