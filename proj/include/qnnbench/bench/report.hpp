#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qnnbench/bench/harness.hpp"

namespace qnnbench::bench {

// Report tree:
//   <dir>/summary.json            config, CV table, hold-out table, stability
//   <dir>/timing.json             wall-clock results (not reproducible)
//   <dir>/cv_metrics.csv          per model and size, fold mean/std
//   <dir>/holdout_comparison.csv  per size and model
//   <dir>/loss_curves.csv         fold-averaged QNN loss per iteration
//   <dir>/error_histograms.csv    hold-out residual histograms
//   <dir>/stability.csv
//   <dir>/time_vs_size.csv
//   <dir>/<model>/<size>/{metrics.json, loss_history.csv, residuals.csv,
//                         predictions.csv}
// Everything except the timing files is a pure function of the report.
void write_report(const BenchmarkReport &report, const std::filesystem::path &dir);

nlohmann::json metrics_json(const ModelSizeResult &result);
nlohmann::json summary_json(const BenchmarkReport &report);
nlohmann::json timing_json(const BenchmarkReport &report);

// Shortest text that reads back to the same double.
std::string format_double(double v);

// Plain-text tables from a report directory for `bench compare`.
// Throws DataError if summary.json is missing or malformed.
std::string compare_report(const std::filesystem::path &dir);

} // namespace qnnbench::bench
