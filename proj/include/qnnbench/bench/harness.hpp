#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qnnbench/bench/experiment.hpp"
#include "qnnbench/bench/folds.hpp"
#include "qnnbench/bench/metrics.hpp"
#include "qnnbench/bench/stability.hpp"
#include "qnnbench/bench/timing.hpp"
#include "qnnbench/core/matrix.hpp"
#include "qnnbench/data/scaler.hpp"
#include "qnnbench/data/split.hpp"

namespace qnnbench::bench {

// One subset of the corpus, scaled with extrema of its own training split.
struct PreparedSize {
  std::size_t size = 0;
  data::SplitBundle split;
  data::ScalerParams scaler;
  data::ScaledData train; // 80%, in split.train order
  data::ScaledData test;  // 20%, in split.test order
  FoldPlan folds;         // over the training rows
  std::vector<std::string> warnings;
};

// Throws DataError if the corpus is smaller than `size`.
PreparedSize prepare_size(std::span<const data::SamplePoint> rows, std::size_t size,
                          std::uint64_t seed, int k);

// Output of fitting one model and predicting one evaluation set, all in
// scaled units.
struct FitOutcome {
  std::vector<double> predictions;
  std::optional<qnn::LossHistory> history; // QNNs only
  bool descent = true;    // every accepted iterate lowered the loss
};

// Seeds only matter for QNNs (initial angles).
FitOutcome fit_and_predict(const ModelSpec &spec, const Matrix &X_train,
                           std::span<const double> y_train, const Matrix &X_eval,
                           std::uint64_t seed, const qnn::TrainOptions &options);

// Seed for the initial angles of a QNN job. fold = -1 is the hold-out fit.
std::uint64_t job_seed(std::uint64_t base, std::size_t size, const ModelSpec &spec, int fold);

struct FoldResult {
  int fold = 0;
  std::size_t n_validation = 0;
  MetricPair metrics; // kW
  std::optional<qnn::LossHistory> history;
  bool descent = true;
};

struct CvSummary {
  std::vector<FoldResult> folds;
  MeanStd r2;   // over folds with a defined r2
  MeanStd rmse; // kW
  std::optional<qnn::LossHistory> mean_history; // element-wise fold average
  std::size_t folds_converged = 0; // folds with loss(15) within 10% of loss(25)
  bool descent = true;
};

struct HoldoutResult {
  MetricPair metrics;
  ResidualStats residuals;
  std::vector<std::size_t> row_index; // corpus row of each test sample
  std::vector<double> actual_kw;
  std::vector<double> predicted_kw;
  std::optional<qnn::LossHistory> history;
  bool descent = true;
};

struct ModelSizeResult {
  ModelSpec model;
  std::size_t size = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  CvSummary cv;
  HoldoutResult holdout;
};

struct TimingResult {
  std::string model;
  std::vector<std::size_t> train_sizes;
  std::vector<TimingSample> samples;
  std::optional<TimeModel> fit; // needs two distinct sizes
  int rank = 0;                 // among QNN configs by slope; 0 if unranked
};

struct BenchmarkReport {
  ExperimentConfig config;
  std::size_t corpus_rows = 0;
  std::vector<ModelSizeResult> results; // model-major, sizes in config order
  std::optional<std::vector<StabilityMetrics>> stability; // QNNs only
  std::string stability_note;
  std::vector<TimingResult> timing;
  std::vector<std::string> warnings;

  const ModelSizeResult *find(std::string_view model, std::size_t size) const;
};

using ProgressFn = std::function<void(std::string_view)>;

// Metric phase (optionally multi-threaded, deterministic), then the serial
// timing phase. A failing job raises StageError naming the stage, model,
// size and fold. Data problems raise DataError.
BenchmarkReport run_benchmark(const ExperimentConfig &config, const ProgressFn &progress = {});

// Same, on rows already in memory.
BenchmarkReport run_benchmark(const ExperimentConfig &config,
                              std::span<const data::SamplePoint> rows,
                              const ProgressFn &progress = {});

// Corpus named by the config: the CSV, or synthetic rows from the seed.
std::vector<data::SamplePoint> load_corpus(const ExperimentConfig &config,
                                           std::vector<std::string> *warnings = nullptr);

} // namespace qnnbench::bench
