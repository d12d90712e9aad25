#include "qnnbench/baselines/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace qnnbench::baselines {

namespace {

struct SplitChoice {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double score = 0.0; // sum_L^2/n_L + sum_R^2/n_R, larger is better
};

SplitChoice best_split(const Matrix &X, std::span<const double> y,
                       std::span<const std::size_t> indices) {
  const std::size_t n = indices.size();
  double total = 0.0;
  for (auto i : indices)
    total += y[i];

  SplitChoice best;
  std::vector<std::size_t> order(indices.begin(), indices.end());
  for (std::size_t f = 0; f < X.cols(); ++f) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return X(a, f) < X(b, f); });
    double left_sum = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      left_sum += y[order[j - 1]];
      const double lo = X(order[j - 1], f);
      const double hi = X(order[j], f);
      if (!(lo < hi))
        continue;
      const double nl = static_cast<double>(j);
      const double nr = static_cast<double>(n - j);
      const double right_sum = total - left_sum;
      const double score = left_sum * left_sum / nl + right_sum * right_sum / nr;
      if (!best.found || score > best.score) {
        double threshold = lo + (hi - lo) / 2.0;
        if (threshold >= hi) // adjacent doubles
          threshold = lo;
        best = {true, f, threshold, score};
      }
    }
  }
  return best;
}

} // namespace

void DecisionTreeRegressor::fit(const Matrix &X, std::span<const double> y) {
  if (X.rows() == 0)
    throw std::invalid_argument("DecisionTreeRegressor::fit: empty data");
  if (X.rows() != y.size())
    throw std::invalid_argument("DecisionTreeRegressor::fit: row count mismatch");
  nodes_.clear();
  n_features_ = X.cols();
  std::vector<std::size_t> indices(X.rows());
  for (std::size_t i = 0; i < indices.size(); ++i)
    indices[i] = i;
  grow(X, y, indices);
}

int DecisionTreeRegressor::grow(const Matrix &X, std::span<const double> y,
                                std::vector<std::size_t> &indices) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();

  double sum = 0.0;
  for (auto i : indices)
    sum += y[i];
  nodes_[id].n_samples = indices.size();
  nodes_[id].value = sum / static_cast<double>(indices.size());

  const bool pure = std::all_of(indices.begin(), indices.end(),
                                [&](std::size_t i) { return y[i] == y[indices.front()]; });
  if (indices.size() < 2 || pure)
    return id;

  const SplitChoice split = best_split(X, y, indices);
  if (!split.found)
    return id;

  std::vector<std::size_t> left, right;
  for (auto i : indices)
    (X(i, split.feature) <= split.threshold ? left : right).push_back(i);
  indices.clear();
  indices.shrink_to_fit();

  const int l = grow(X, y, left);
  const int r = grow(X, y, right);
  nodes_[id].feature = static_cast<int>(split.feature);
  nodes_[id].threshold = split.threshold;
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

double DecisionTreeRegressor::predict(std::span<const double> query) const {
  if (nodes_.empty())
    throw std::logic_error("DecisionTreeRegressor: predict before fit");
  if (query.size() != n_features_)
    throw std::invalid_argument("DecisionTreeRegressor: query width mismatch");
  const TreeNode *node = &nodes_[0];
  while (!node->is_leaf())
    node = &nodes_[static_cast<std::size_t>(
        query[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left
                                                                          : node->right)];
  return node->value;
}

std::vector<double> DecisionTreeRegressor::predict(const Matrix &X) const {
  std::vector<double> out;
  out.reserve(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i)
    out.push_back(predict(X.row(i)));
  return out;
}

std::size_t DecisionTreeRegressor::depth() const {
  if (nodes_.empty())
    return 0;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const auto &n = nodes_[static_cast<std::size_t>(id)];
    if (!n.is_leaf()) {
      stack.emplace_back(n.left, d + 1);
      stack.emplace_back(n.right, d + 1);
    }
  }
  return deepest;
}

std::size_t DecisionTreeRegressor::n_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode &n) { return n.is_leaf(); }));
}

DecisionTreeRegressor DecisionTreeRegressor::from_nodes(std::vector<TreeNode> nodes,
                                                        std::size_t n_features) {
  const auto count = static_cast<int>(nodes.size());
  for (const auto &n : nodes) {
    if (n.is_leaf())
      continue;
    if (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count ||
        static_cast<std::size_t>(n.feature) >= n_features)
      throw std::invalid_argument("DecisionTreeRegressor::from_nodes: malformed node array");
  }
  DecisionTreeRegressor t;
  t.nodes_ = std::move(nodes);
  t.n_features_ = n_features;
  return t;
}

} // namespace qnnbench::baselines
