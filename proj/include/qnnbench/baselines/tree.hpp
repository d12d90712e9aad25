#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qnnbench/core/matrix.hpp"

namespace qnnbench::baselines {

// Node of a fitted regression tree, stored in a flat array. Samples with
// x[feature] <= threshold go left.
struct TreeNode {
  int feature = -1; // -1 for a leaf
  double threshold = 0.0;
  double value = 0.0; // mean target of the samples reaching this node
  std::size_t n_samples = 0;
  int left = -1;
  int right = -1;

  bool is_leaf() const noexcept { return feature < 0; }
};

// CART regression tree grown to purity: variance-reduction splits at the
// midpoints between consecutive distinct feature values, no depth limit,
// nodes with fewer than 2 samples are leaves. Among equally good splits the
// lowest feature index, then the lowest threshold, wins.
class DecisionTreeRegressor {
public:
  // Throws std::invalid_argument on empty data or a shape mismatch.
  void fit(const Matrix &X, std::span<const double> y);

  // Throws std::logic_error before fit.
  double predict(std::span<const double> query) const;
  std::vector<double> predict(const Matrix &X) const;

  const std::vector<TreeNode> &nodes() const noexcept { return nodes_; }
  std::size_t n_features() const noexcept { return n_features_; }
  std::size_t depth() const;
  std::size_t n_leaves() const;

  // Rebuild from a node array (e.g. deserialised). Node 0 is the root.
  static DecisionTreeRegressor from_nodes(std::vector<TreeNode> nodes, std::size_t n_features);

private:
  int grow(const Matrix &X, std::span<const double> y, std::vector<std::size_t> &indices);

  std::vector<TreeNode> nodes_;
  std::size_t n_features_ = 0;
};

} // namespace qnnbench::baselines
