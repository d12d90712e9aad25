// qnnbench command line. Exit codes: 0 ok, 2 config, 3 data, 4 runtime.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "qnnbench/baselines/knn.hpp"
#include "qnnbench/baselines/linear.hpp"
#include "qnnbench/baselines/serialize.hpp"
#include "qnnbench/baselines/tree.hpp"
#include "qnnbench/bench/experiment.hpp"
#include "qnnbench/bench/harness.hpp"
#include "qnnbench/bench/report.hpp"
#include "qnnbench/circuit/library.hpp"
#include "qnnbench/core/errors.hpp"
#include "qnnbench/data/synthetic.hpp"
#include "qnnbench/qnn/serialize.hpp"

namespace {

using namespace qnnbench;
using nlohmann::json;

enum Exit { kOk = 0, kConfig = 2, kData = 3, kRuntime = 4 };

struct RunArgs {
  std::string config;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool quiet = false;
};

int bench_run(const RunArgs &a) {
  auto cfg = bench::load_experiment(a.config);
  if (a.out)
    cfg.output_dir = *a.out;
  if (a.threads)
    cfg.threads = *a.threads;
  bench::ProgressFn progress;
  if (!a.quiet)
    progress = [](std::string_view msg) { std::cerr << msg << '\n'; };
  const auto report = bench::run_benchmark(cfg, progress);
  bench::write_report(report, cfg.output_dir);
  for (const auto &w : report.warnings)
    std::cerr << "warning: " << w << '\n';
  std::cout << "report written to " << cfg.output_dir.string() << '\n';
  return kOk;
}

struct TrainArgs {
  std::string model;
  std::size_t size = 1000;
  std::uint64_t seed = 0;
  std::optional<std::string> data;
  std::size_t synthetic_rows = 4464;
  int max_iter = 25;
  std::optional<std::string> out;
};

int bench_train(const TrainArgs &a) {
  const auto spec = bench::parse_model(a.model);
  bench::ExperimentConfig cfg;
  cfg.seed = a.seed;
  cfg.synthetic = !a.data.has_value();
  cfg.synthetic_rows = a.synthetic_rows;
  if (a.data)
    cfg.dataset_path = *a.data;
  cfg.train.optimizer.max_iter = a.max_iter;

  std::vector<std::string> warnings;
  const auto rows = bench::load_corpus(cfg, &warnings);
  for (const auto &w : warnings)
    std::cerr << "warning: " << w << '\n';
  const auto p = bench::prepare_size(rows, a.size, cfg.seed, cfg.folds);

  std::vector<double> pred;
  json model_doc;
  switch (spec.kind) {
  case bench::ModelKind::Qnn: {
    const auto seed = bench::job_seed(cfg.seed, p.size, spec, -1);
    auto r = qnn::train(*spec.qnn, p.train.X, p.train.y, seed, cfg.train);
    pred = r.model.predict(p.test.X);
    std::cerr << "loss " << r.initial_loss << " -> " << r.history.final_loss() << " ("
              << optim::to_string(r.optimizer.termination) << ", " << r.optimizer.n_iters
              << " iterations)\n";
    model_doc = qnn::to_json(qnn::TrainedQnn{std::move(r.model), r.history, p.scaler, seed});
    break;
  }
  case bench::ModelKind::Knn: {
    baselines::KnnRegressor m(5, 2.0);
    m.fit(p.train.X, p.train.y);
    pred = m.predict(p.test.X);
    model_doc = baselines::to_json(m);
    break;
  }
  case bench::ModelKind::Dtr: {
    baselines::DecisionTreeRegressor m;
    m.fit(p.train.X, p.train.y);
    pred = m.predict(p.test.X);
    model_doc = baselines::to_json(m);
    break;
  }
  case bench::ModelKind::Lr: {
    const auto m = baselines::ols_fit(p.train.X, p.train.y);
    pred = m.predict(p.test.X);
    model_doc = baselines::to_json(m);
    break;
  }
  }
  if (!spec.is_qnn())
    model_doc["scaler"] = qnn::scaler_to_json(p.scaler);

  std::vector<double> actual, predicted;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    actual.push_back(data::minmax_invert_target(p.scaler, p.test.y[i]));
    predicted.push_back(data::minmax_invert_target(p.scaler, pred[i]));
  }
  const auto m = bench::compute_metrics(actual, predicted);
  const auto res = bench::residual_stats(actual, predicted);
  std::printf("%s size=%zu train=%zu test=%zu r2=%s rmse_kw=%.2f bias_kw=%.2f spread_kw=%.2f\n",
              spec.name.c_str(), p.size, p.split.train.size(), p.split.test.size(),
              m.r2 ? std::to_string(*m.r2).c_str() : "undefined", m.rmse, res.mean, res.std_dev);
  if (a.out) {
    std::ofstream out(*a.out);
    if (!out)
      throw std::runtime_error("cannot write " + *a.out);
    out << model_doc.dump(2) << '\n';
  }
  return kOk;
}

int circuit_show(const std::string &model, const std::string &part) {
  const auto spec = bench::parse_model(model);
  if (!spec.is_qnn())
    throw ConfigError(spec.name + " is not a quantum model");
  const auto c = qnn::build_circuits(*spec.qnn);
  const auto &chosen = part == "feature" ? c.feature_map : part == "ansatz" ? c.ansatz : c.composed;
  const auto census = circuit::gate_census(chosen);
  std::cout << "# " << spec.name << " entanglement=" << circuit::to_string(spec.qnn->strategy)
            << " single=" << census.single_qubit << " two=" << census.two_qubit
            << " total=" << census.total << '\n';
  std::cout << circuit::render(chosen);
  return kOk;
}

int gen_synth(std::size_t size, std::uint64_t seed, const std::string &path) {
  if (size < 1)
    throw ConfigError("--size must be >= 1");
  const auto rows = data::gen_synthetic(size, seed);
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  data::write_dataset(out, rows);
  std::cout << "wrote " << rows.size() << " rows to " << path << '\n';
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quantum neural network regression benchmark"};
  app.require_subcommand(1);

  auto *bench = app.add_subcommand("bench", "Run, train or compare");
  bench->require_subcommand(1);

  RunArgs run;
  auto *run_cmd = bench->add_subcommand("run", "Run the full protocol from an experiment config");
  run_cmd->add_option("--config", run.config, "Experiment JSON")->required();
  run_cmd->add_option("--out", run.out, "Override output_dir");
  run_cmd->add_option("--threads", run.threads, "Worker threads for the metric phase (0 = all)");
  run_cmd->add_flag("--quiet", run.quiet, "No progress on stderr");

  TrainArgs train;
  auto *train_cmd = bench->add_subcommand("train", "Fit one model on one subset, score the hold-out");
  train_cmd->add_option("--model", train.model, "QNN-1..QNN-6, kNN, DTR or LR")->required();
  train_cmd->add_option("--size", train.size, "Subset size (80% is trained on)")->required();
  train_cmd->add_option("--seed", train.seed, "Seed")->required();
  train_cmd->add_option("--data", train.data, "Turbine CSV; synthetic rows when omitted");
  train_cmd->add_option("--synthetic-rows", train.synthetic_rows, "Synthetic corpus size");
  train_cmd->add_option("--max-iter", train.max_iter, "Optimizer iterations")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--out", train.out, "Write the fitted model as JSON");

  std::string report_dir;
  auto *cmp_cmd = bench->add_subcommand("compare", "Print tables from a report directory");
  cmp_cmd->add_option("--report", report_dir, "Report directory")->required();

  auto *circ = app.add_subcommand("circuit", "Inspect circuits");
  circ->require_subcommand(1);
  std::string circ_model, circ_part = "composed";
  auto *show_cmd = circ->add_subcommand("show", "Print one instruction per line");
  show_cmd->add_option("--model", circ_model, "QNN-1..QNN-6")->required();
  show_cmd->add_option("--part", circ_part, "feature, ansatz or composed")
      ->check(CLI::IsMember({"feature", "ansatz", "composed"}));

  auto *data_cmd = app.add_subcommand("data", "Data utilities");
  data_cmd->require_subcommand(1);
  std::size_t synth_size = 0;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  auto *gen_cmd = data_cmd->add_subcommand("gen-synth", "Write a synthetic turbine CSV");
  gen_cmd->add_option("--size", synth_size, "Rows")->required();
  gen_cmd->add_option("--seed", synth_seed, "Seed")->required();
  gen_cmd->add_option("--out", synth_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (run_cmd->parsed())
      return bench_run(run);
    if (train_cmd->parsed())
      return bench_train(train);
    if (cmp_cmd->parsed()) {
      std::cout << bench::compare_report(report_dir);
      return kOk;
    }
    if (show_cmd->parsed())
      return circuit_show(circ_model, circ_part);
    if (gen_cmd->parsed())
      return gen_synth(synth_size, synth_seed, synth_out);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const DataError &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const StageError &e) {
    std::cerr << "runtime failure: " << e.what() << '\n';
    return kRuntime;
  } catch (const std::exception &e) {
    std::cerr << "runtime failure: " << e.what() << '\n';
    return kRuntime;
  }
  return kRuntime;
}
