#pragma once

#include <cstdint>

#include <json.hpp>

#include "qnnbench/data/scaler.hpp"
#include "qnnbench/qnn/regressor.hpp"

namespace qnnbench::qnn {

// Everything needed to reuse a trained QNN on raw measurements.
struct TrainedQnn {
  QnnModel model;
  LossHistory history;
  data::ScalerParams scaler;
  std::uint64_t seed = 0;
};

// {"config": "QNN-1", "strategy": "full", "params": [...12],
//  "scaler": {"columns": [...], "min": [...], "max": [...]},
//  "seed": 7, "loss_history": [...]}
nlohmann::json to_json(const TrainedQnn &trained);

// Throws ConfigError on an unknown config name or malformed document.
TrainedQnn trained_qnn_from_json(const nlohmann::json &doc);

nlohmann::json scaler_to_json(const data::ScalerParams &scaler);
data::ScalerParams scaler_from_json(const nlohmann::json &doc);

} // namespace qnnbench::qnn
