#pragma once

#include <json.hpp>

#include "qnnbench/baselines/knn.hpp"
#include "qnnbench/baselines/linear.hpp"
#include "qnnbench/baselines/tree.hpp"

namespace qnnbench::baselines {

// {"type":"knn","k":5,"p":2,"X":[[...],...],"y":[...]}
// The *_from_json readers throw ConfigError on malformed documents.
nlohmann::json to_json(const KnnRegressor &model);
KnnRegressor knn_from_json(const nlohmann::json &doc);

// {"type":"dtr","n_features":4,"root":{"feature":3,"threshold":..,"value":..,
//   "n_samples":..,"left":{...},"right":{...}}}; leaves carry no feature.
nlohmann::json to_json(const DecisionTreeRegressor &model);
DecisionTreeRegressor tree_from_json(const nlohmann::json &doc);

// {"type":"ols","weights":[...],"intercept":..,"rank":4,"rank_deficient":false}
nlohmann::json to_json(const LinearModel &model);
LinearModel linear_from_json(const nlohmann::json &doc);

} // namespace qnnbench::baselines
