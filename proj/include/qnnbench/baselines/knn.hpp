#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qnnbench/core/matrix.hpp"

namespace qnnbench::baselines {

double minkowski_distance(std::span<const double> a, std::span<const double> b, double p);

// Uniform-weight k-nearest-neighbour regressor. Neighbours at equal distance
// are ordered by training index.
class KnnRegressor {
public:
  // Throws std::invalid_argument unless k >= 1 and p >= 1.
  explicit KnnRegressor(std::size_t k = 5, double p = 2.0);

  // Throws std::invalid_argument if k exceeds the training size or the
  // shapes disagree.
  void fit(const Matrix &X, std::span<const double> y);

  // Throws std::logic_error before fit.
  double predict(std::span<const double> query) const;
  std::vector<double> predict(const Matrix &X) const;

  // Training indices of the k nearest points, nearest first.
  std::vector<std::size_t> neighbors(std::span<const double> query) const;

  std::size_t k() const noexcept { return k_; }
  double p() const noexcept { return p_; }
  const Matrix &train_features() const noexcept { return X_; }
  const std::vector<double> &train_targets() const noexcept { return y_; }

private:
  std::size_t k_;
  double p_;
  Matrix X_;
  std::vector<double> y_;
};

} // namespace qnnbench::baselines
