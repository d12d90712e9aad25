#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qnnbench/data/dataset.hpp"
#include "qnnbench/qnn/regressor.hpp"

namespace qnnbench::bench {

enum class ModelKind { Qnn, Knn, Dtr, Lr };

struct ModelSpec {
  std::string name; // "QNN-1".."QNN-6", "kNN", "DTR", "LR"
  ModelKind kind = ModelKind::Qnn;
  std::optional<qnn::QnnConfig> qnn;

  bool is_qnn() const noexcept { return kind == ModelKind::Qnn; }
};

// Case-insensitive. Throws ConfigError for an unknown name.
ModelSpec parse_model(std::string_view name);
std::vector<ModelSpec> all_models(); // six QNNs then kNN, DTR, LR

struct TimingOptions {
  bool enabled = true;
  int repeats = 1;
  int warmup = 1; // untimed runs before the timed ones
};

struct ExperimentConfig {
  std::optional<std::filesystem::path> dataset_path;
  bool synthetic = false;
  std::size_t synthetic_rows = 4464;
  data::ColumnAliases aliases;
  std::uint64_t seed = 0;
  std::vector<ModelSpec> models;
  std::vector<std::size_t> sizes; // subset sizes; 80% of each is trained on
  int folds = 5;
  qnn::TrainOptions train;
  TimingOptions timing;
  unsigned threads = 1; // 0 = hardware concurrency
  std::filesystem::path output_dir = "report";
};

// JSON document, e.g.
// {
//   "data": {"path": "turbine.csv", "aliases": {"Power": "ActivePower"}},
//   "seed": 42,
//   "models": ["QNN-1", "kNN"],
//   "sizes": [1000, 2000],
//   "folds": 5,
//   "optimizer": {"max_iter": 25, "grad_tol": 1e-8, "memory": 10},
//   "timing": {"enabled": true, "repeats": 1, "warmup": 1},
//   "threads": 4,
//   "output_dir": "report"
// }
// "data": {"synthetic": true, "rows": 4464} replaces the path. Relative
// paths resolve against `base_dir`. Unknown keys are rejected. Throws
// ConfigError.
ExperimentConfig parse_experiment(const nlohmann::json &doc,
                                  const std::filesystem::path &base_dir = {});
ExperimentConfig load_experiment(const std::filesystem::path &path);

nlohmann::json to_json(const ExperimentConfig &config);

} // namespace qnnbench::bench
