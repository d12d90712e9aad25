#include "qnnbench/bench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "qnnbench/baselines/knn.hpp"
#include "qnnbench/baselines/linear.hpp"
#include "qnnbench/baselines/tree.hpp"
#include "qnnbench/core/errors.hpp"
#include "qnnbench/core/random.hpp"
#include "qnnbench/data/synthetic.hpp"

namespace qnnbench::bench {

namespace {

enum SeedTag : std::uint64_t { kCorpusTag = 0, kSplitTag = 1, kFoldTag = 2, kInitTag = 3 };

constexpr std::size_t kMaxCorpusWarnings = 20;

std::vector<double> to_kw(const data::ScalerParams &scaler, std::span<const double> scaled) {
  std::vector<double> out(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    out[i] = data::minmax_invert_target(scaler, scaled[i]);
  return out;
}

std::string describe(const std::exception_ptr &e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception &ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

struct Job {
  std::size_t model = 0;
  std::size_t size = 0;
  int fold = -1; // -1: hold-out fit on the whole training split
};

// Runs every job, each writing only its own slot. Errors are kept per slot
// and surface in job order, so the reported failure does not depend on
// scheduling.
template <typename Fn>
void run_jobs(std::size_t n_jobs, unsigned threads, Fn &&fn,
              std::vector<std::exception_ptr> &errors) {
  errors.assign(n_jobs, nullptr);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < n_jobs; j = next++) {
      try {
        fn(j);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_jobs)));
  if (n == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back(worker);
  for (auto &t : pool)
    t.join();
}

qnn::LossHistory mean_history(const std::vector<const qnn::LossHistory *> &histories) {
  qnn::LossHistory out;
  out.values.assign(histories.front()->values.size(), 0.0);
  for (const auto *h : histories)
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] += h->values[i];
  for (auto &v : out.values)
    v /= static_cast<double>(histories.size());
  return out;
}

bool has_converged(const qnn::LossHistory &h) {
  return h.values.size() >= kFinalIteration && qnn::converged_by(h);
}

} // namespace

std::uint64_t job_seed(std::uint64_t base, std::size_t size, const ModelSpec &spec, int fold) {
  const std::uint64_t id = spec.qnn ? static_cast<std::uint64_t>(spec.qnn->id) : 0;
  return derive_seed(base, kInitTag, size, id, static_cast<std::uint64_t>(fold + 1));
}

PreparedSize prepare_size(std::span<const data::SamplePoint> rows, std::size_t size,
                          std::uint64_t seed, int k) {
  if (size > rows.size())
    throw DataError("subset size " + std::to_string(size) + " exceeds the " +
                    std::to_string(rows.size()) + " rows available");
  PreparedSize p;
  p.size = size;
  p.split = data::subset_and_split(rows.size(), size, derive_seed(seed, kSplitTag, size));

  std::vector<data::SamplePoint> train, test;
  for (auto i : p.split.train)
    train.push_back(rows[i]);
  for (auto i : p.split.test)
    test.push_back(rows[i]);
  auto fit = data::minmax_fit(train);
  p.scaler = fit.params;
  for (auto &w : fit.warnings)
    p.warnings.push_back("size " + std::to_string(size) + ": " + w);
  p.train = data::minmax_apply(p.scaler, train);
  p.test = data::minmax_apply(p.scaler, test);
  p.folds = kfold_plan(train.size(), k, derive_seed(seed, kFoldTag, size));
  return p;
}

FitOutcome fit_and_predict(const ModelSpec &spec, const Matrix &X_train,
                           std::span<const double> y_train, const Matrix &X_eval,
                           std::uint64_t seed, const qnn::TrainOptions &options) {
  FitOutcome out;
  switch (spec.kind) {
  case ModelKind::Qnn: {
    auto result = qnn::train(*spec.qnn, X_train, y_train, seed, options);
    out.predictions = result.model.predict(X_eval);
    double prev = result.optimizer.f_initial;
    for (double f : result.optimizer.f_history) {
      if (f > prev)
        out.descent = false;
      prev = f;
    }
    out.history = std::move(result.history);
    break;
  }
  case ModelKind::Knn: {
    baselines::KnnRegressor m(5, 2.0);
    m.fit(X_train, y_train);
    out.predictions = m.predict(X_eval);
    break;
  }
  case ModelKind::Dtr: {
    baselines::DecisionTreeRegressor m;
    m.fit(X_train, y_train);
    out.predictions = m.predict(X_eval);
    break;
  }
  case ModelKind::Lr: {
    const auto m = baselines::ols_fit(X_train, y_train);
    out.predictions = m.predict(X_eval);
    break;
  }
  }
  return out;
}

const ModelSizeResult *BenchmarkReport::find(std::string_view model, std::size_t size) const {
  for (const auto &r : results)
    if (r.model.name == model && r.size == size)
      return &r;
  return nullptr;
}

std::vector<data::SamplePoint> load_corpus(const ExperimentConfig &config,
                                           std::vector<std::string> *warnings) {
  if (config.synthetic)
    return data::gen_synthetic(config.synthetic_rows, derive_seed(config.seed, kCorpusTag));
  auto loaded = data::load_dataset(*config.dataset_path, config.aliases);
  if (warnings) {
    const std::size_t n = loaded.warnings.size();
    for (std::size_t i = 0; i < std::min(n, kMaxCorpusWarnings); ++i)
      warnings->push_back(loaded.warnings[i]);
    if (n > kMaxCorpusWarnings)
      warnings->push_back(std::to_string(n - kMaxCorpusWarnings) + " more range warnings");
  }
  return std::move(loaded.rows);
}

BenchmarkReport run_benchmark(const ExperimentConfig &config, const ProgressFn &progress) {
  std::vector<std::string> warnings;
  const auto rows = load_corpus(config, &warnings);
  auto report = run_benchmark(config, rows, progress);
  report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());
  return report;
}

BenchmarkReport run_benchmark(const ExperimentConfig &config,
                              std::span<const data::SamplePoint> rows,
                              const ProgressFn &progress) {
  auto say = [&](const std::string &msg) {
    if (progress)
      progress(msg);
  };
  BenchmarkReport report;
  report.config = config;
  report.corpus_rows = rows.size();

  std::vector<PreparedSize> prepared;
  for (auto size : config.sizes) {
    try {
      prepared.push_back(prepare_size(rows, size, config.seed, config.folds));
    } catch (const DataError &) {
      throw;
    } catch (const std::exception &e) {
      throw StageError("prepare", "-", size, -1, e.what());
    }
    for (auto &w : prepared.back().warnings)
      report.warnings.push_back(w);
  }

  // metric phase
  std::vector<Job> jobs;
  for (std::size_t m = 0; m < config.models.size(); ++m)
    for (std::size_t s = 0; s < prepared.size(); ++s)
      for (int f = -1; f < config.folds; ++f)
        jobs.push_back({m, s, f});

  std::vector<FitOutcome> outcomes(jobs.size());
  std::vector<std::exception_ptr> errors;
  const unsigned threads =
      config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  say("metric phase: " + std::to_string(jobs.size()) + " fits on " + std::to_string(threads) +
      " thread(s)");
  run_jobs(
      jobs.size(), threads,
      [&](std::size_t j) {
        const auto &job = jobs[j];
        const auto &spec = config.models[job.model];
        const auto &p = prepared[job.size];
        const auto seed = job_seed(config.seed, p.size, spec, job.fold);
        if (job.fold < 0) {
          outcomes[j] = fit_and_predict(spec, p.train.X, p.train.y, p.test.X, seed, config.train);
        } else {
          const auto tr = p.folds.training_indices(job.fold);
          const auto va = p.folds.validation_indices(job.fold);
          outcomes[j] = fit_and_predict(spec, p.train.X.select_rows(tr), select(p.train.y, tr),
                                        p.train.X.select_rows(va), seed, config.train);
        }
      },
      errors);
  for (std::size_t j = 0; j < jobs.size(); ++j)
    if (errors[j])
      throw StageError(jobs[j].fold < 0 ? "holdout" : "cv", config.models[jobs[j].model].name,
                       prepared[jobs[j].size].size, jobs[j].fold, describe(errors[j]));

  // aggregation, in job order
  std::size_t j = 0;
  for (std::size_t m = 0; m < config.models.size(); ++m) {
    for (std::size_t s = 0; s < prepared.size(); ++s) {
      const auto &p = prepared[s];
      ModelSizeResult r;
      r.model = config.models[m];
      r.size = p.size;
      r.train_size = p.split.train.size();
      r.test_size = p.split.test.size();

      auto &hold = outcomes[j++];
      r.holdout.row_index = p.split.test;
      r.holdout.actual_kw = to_kw(p.scaler, p.test.y);
      r.holdout.predicted_kw = to_kw(p.scaler, hold.predictions);
      r.holdout.metrics = compute_metrics(r.holdout.actual_kw, r.holdout.predicted_kw);
      r.holdout.residuals = residual_stats(r.holdout.actual_kw, r.holdout.predicted_kw);
      r.holdout.history = std::move(hold.history);
      r.holdout.descent = hold.descent;

      std::vector<double> r2s, rmses;
      std::vector<const qnn::LossHistory *> histories;
      for (int f = 0; f < config.folds; ++f) {
        auto &o = outcomes[j++];
        const auto va = p.folds.validation_indices(f);
        FoldResult fr;
        fr.fold = f;
        fr.n_validation = va.size();
        fr.metrics = compute_metrics(to_kw(p.scaler, select(p.train.y, va)),
                                     to_kw(p.scaler, o.predictions));
        fr.history = std::move(o.history);
        fr.descent = o.descent;
        if (fr.metrics.r2)
          r2s.push_back(*fr.metrics.r2);
        rmses.push_back(fr.metrics.rmse);
        r.cv.descent = r.cv.descent && fr.descent;
        r.cv.folds.push_back(std::move(fr));
      }
      for (const auto &fr : r.cv.folds)
        if (fr.history) {
          histories.push_back(&*fr.history);
          if (has_converged(*fr.history))
            ++r.cv.folds_converged;
        }
      r.cv.r2 = mean_std(r2s);
      r.cv.rmse = mean_std(rmses);
      if (!histories.empty())
        r.cv.mean_history = mean_history(histories);
      report.results.push_back(std::move(r));
    }
  }

  // stability over the QNN configs, from fold-averaged CV loss curves
  std::vector<ConfigHistories> curves;
  for (const auto &spec : config.models)
    if (spec.is_qnn()) {
      ConfigHistories c{spec.name, {}};
      for (const auto &p : prepared)
        c.by_size.emplace_back(p.size, *report.find(spec.name, p.size)->cv.mean_history);
      curves.push_back(std::move(c));
    }
  if (curves.size() < 2)
    report.stability_note = "stability needs at least two QNN configs";
  else if (config.train.optimizer.max_iter < static_cast<int>(kFinalIteration))
    report.stability_note = "stability needs max_iter >= " + std::to_string(kFinalIteration);
  else
    report.stability = stability_scores(curves);

  // timing phase: serial, after every metric job has joined
  if (config.timing.enabled) {
    say("timing phase");
    std::vector<TimeModel> qnn_fits;
    std::vector<std::size_t> qnn_slots;
    for (const auto &spec : config.models) {
      TimingResult t;
      t.model = spec.name;
      for (const auto &p : prepared) {
        auto job = [&] {
          for (int f = 0; f < config.folds; ++f) {
            const auto tr = p.folds.training_indices(f);
            const auto va = p.folds.validation_indices(f);
            fit_and_predict(spec, p.train.X.select_rows(tr), select(p.train.y, tr),
                            p.train.X.select_rows(va), job_seed(config.seed, p.size, spec, f),
                            config.train);
          }
        };
        try {
          t.samples.push_back(measure_training_time(job, config.timing.repeats, config.timing.warmup));
        } catch (const std::exception &e) {
          throw StageError("timing", spec.name, p.size, -1, e.what());
        }
        t.train_sizes.push_back(p.split.train.size());
        say("timed " + spec.name + " size " + std::to_string(p.size) + ": " +
            std::to_string(t.samples.back().mean_minutes * 60.0) + " s");
      }
      if (prepared.size() >= 2) {
        std::vector<TimePoint> pts;
        for (std::size_t i = 0; i < t.samples.size(); ++i)
          pts.push_back({static_cast<double>(t.train_sizes[i]), t.samples[i].mean_minutes});
        t.fit = fit_time_model(pts);
        if (spec.is_qnn()) {
          qnn_fits.push_back(*t.fit);
          qnn_slots.push_back(report.timing.size());
        }
      }
      report.timing.push_back(std::move(t));
    }
    const auto ranks = rank_by_slope(qnn_fits);
    for (std::size_t i = 0; i < ranks.size(); ++i)
      report.timing[qnn_slots[i]].rank = ranks[i];
  }
  return report;
}

} // namespace qnnbench::bench
