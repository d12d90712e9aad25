#include "qnnbench/baselines/serialize.hpp"

#include <stdexcept>

#include "qnnbench/core/errors.hpp"

namespace qnnbench::baselines {

using nlohmann::json;

namespace {

// Malformed documents surface as ConfigError whatever layer noticed.
template <class F> auto guarded(const char *who, F &&f) {
  try {
    return f();
  } catch (const json::exception &e) {
    throw ConfigError(std::string(who) + ": " + e.what());
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string(who) + ": " + e.what());
  }
}

} // namespace

json to_json(const KnnRegressor &model) {
  const auto &X = model.train_features();
  json rows = json::array();
  for (std::size_t i = 0; i < X.rows(); ++i)
    rows.push_back(std::vector<double>(X.row(i).begin(), X.row(i).end()));
  return {{"type", "knn"}, {"k", model.k()}, {"p", model.p()}, {"X", rows},
          {"y", model.train_targets()}};
}

KnnRegressor knn_from_json(const json &doc) {
  return guarded("knn_from_json", [&] {
    if (doc.at("type") != "knn")
      throw std::invalid_argument("wrong model type");
    Matrix X;
    for (const auto &row : doc.at("X"))
      X.append_row(row.get<std::vector<double>>());
    KnnRegressor model(doc.at("k").get<std::size_t>(), doc.at("p").get<double>());
    model.fit(X, doc.at("y").get<std::vector<double>>());
    return model;
  });
}

namespace {

json node_to_json(const std::vector<TreeNode> &nodes, int id) {
  const auto &n = nodes[static_cast<std::size_t>(id)];
  json j{{"value", n.value}, {"n_samples", n.n_samples}};
  if (!n.is_leaf()) {
    j["feature"] = n.feature;
    j["threshold"] = n.threshold;
    j["left"] = node_to_json(nodes, n.left);
    j["right"] = node_to_json(nodes, n.right);
  }
  return j;
}

int node_from_json(const json &j, std::vector<TreeNode> &nodes) {
  const int id = static_cast<int>(nodes.size());
  nodes.emplace_back();
  nodes.back().value = j.at("value").get<double>();
  nodes.back().n_samples = j.at("n_samples").get<std::size_t>();
  if (j.contains("feature")) {
    const int feature = j.at("feature").get<int>();
    const double threshold = j.at("threshold").get<double>();
    const int l = node_from_json(j.at("left"), nodes);
    const int r = node_from_json(j.at("right"), nodes);
    auto &n = nodes[static_cast<std::size_t>(id)];
    n.feature = feature;
    n.threshold = threshold;
    n.left = l;
    n.right = r;
  }
  return id;
}

} // namespace

json to_json(const DecisionTreeRegressor &model) {
  if (model.nodes().empty())
    throw std::invalid_argument("to_json: tree is not fitted");
  return {{"type", "dtr"}, {"n_features", model.n_features()},
          {"root", node_to_json(model.nodes(), 0)}};
}

DecisionTreeRegressor tree_from_json(const json &doc) {
  return guarded("tree_from_json", [&] {
    if (doc.at("type") != "dtr")
      throw std::invalid_argument("wrong model type");
    std::vector<TreeNode> nodes;
    node_from_json(doc.at("root"), nodes);
    return DecisionTreeRegressor::from_nodes(std::move(nodes), doc.at("n_features").get<std::size_t>());
  });
}

json to_json(const LinearModel &model) {
  return {{"type", "ols"},
          {"weights", model.weights},
          {"intercept", model.intercept},
          {"rank", model.rank},
          {"rank_deficient", model.rank_deficient}};
}

LinearModel linear_from_json(const json &doc) {
  return guarded("linear_from_json", [&] {
    if (doc.at("type") != "ols")
      throw std::invalid_argument("wrong model type");
    LinearModel m;
    doc.at("weights").get_to(m.weights);
    m.intercept = doc.at("intercept").get<double>();
    m.rank = doc.at("rank").get<std::size_t>();
    m.rank_deficient = doc.at("rank_deficient").get<bool>();
    return m;
  });
}

} // namespace qnnbench::baselines
