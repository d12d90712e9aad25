#include "qnnbench/baselines/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace qnnbench::baselines {

double minkowski_distance(std::span<const double> a, std::span<const double> b, double p) {
  double total = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < a.size(); ++i)
      total += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(total);
  }
  if (p == 1.0) {
    for (std::size_t i = 0; i < a.size(); ++i)
      total += std::abs(a[i] - b[i]);
    return total;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    total += std::pow(std::abs(a[i] - b[i]), p);
  return std::pow(total, 1.0 / p);
}

KnnRegressor::KnnRegressor(std::size_t k, double p) : k_(k), p_(p) {
  if (k < 1)
    throw std::invalid_argument("KnnRegressor: k must be >= 1");
  if (!(p >= 1.0))
    throw std::invalid_argument("KnnRegressor: Minkowski order must be >= 1");
}

void KnnRegressor::fit(const Matrix &X, std::span<const double> y) {
  if (X.rows() != y.size())
    throw std::invalid_argument("KnnRegressor::fit: row count mismatch");
  if (k_ > X.rows())
    throw std::invalid_argument("KnnRegressor::fit: k exceeds training size");
  X_ = X;
  y_.assign(y.begin(), y.end());
}

std::vector<std::size_t> KnnRegressor::neighbors(std::span<const double> query) const {
  if (X_.empty())
    throw std::logic_error("KnnRegressor: predict before fit");
  if (query.size() != X_.cols())
    throw std::invalid_argument("KnnRegressor: query width mismatch");

  std::vector<std::pair<double, std::size_t>> ranked(X_.rows());
  for (std::size_t i = 0; i < X_.rows(); ++i)
    ranked[i] = {minkowski_distance(query, X_.row(i), p_), i};
  // Pair ordering breaks distance ties by training index.
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k_),
                    ranked.end());
  std::vector<std::size_t> out(k_);
  for (std::size_t i = 0; i < k_; ++i)
    out[i] = ranked[i].second;
  return out;
}

double KnnRegressor::predict(std::span<const double> query) const {
  double total = 0.0;
  for (auto i : neighbors(query))
    total += y_[i];
  return total / static_cast<double>(k_);
}

std::vector<double> KnnRegressor::predict(const Matrix &X) const {
  std::vector<double> out;
  out.reserve(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i)
    out.push_back(predict(X.row(i)));
  return out;
}

} // namespace qnnbench::baselines
