// Acceptance checks. One PASS/FAIL (or SKIP) line per criterion; exit code 1
// if anything failed.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qnnbench/baselines/knn.hpp"
#include "qnnbench/baselines/linear.hpp"
#include "qnnbench/baselines/tree.hpp"
#include "qnnbench/bench/experiment.hpp"
#include "qnnbench/bench/harness.hpp"
#include "qnnbench/bench/report.hpp"
#include "qnnbench/bench/stability.hpp"
#include "qnnbench/bench/timing.hpp"
#include "qnnbench/circuit/library.hpp"
#include "qnnbench/core/random.hpp"
#include "qnnbench/optim/lbfgs.hpp"
#include "qnnbench/qnn/config.hpp"
#include "qnnbench/qnn/regressor.hpp"

using namespace qnnbench;
namespace fs = std::filesystem;

namespace {

const fs::path kSourceDir = QNNBENCH_SOURCE_DIR;

struct Verdict {
  enum { Pass, Fail, Skip } state = Fail;
  std::string detail;
};

Verdict pass(std::string d) { return {Verdict::Pass, std::move(d)}; }
Verdict fail(std::string d) { return {Verdict::Fail, std::move(d)}; }

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- gate counts ----------------------------------------------------------

Verdict gate_counts() {
  const circuit::GateCensus want[6] = {{28, 12, 40}, {28, 6, 34}, {28, 8, 36},
                                       {28, 8, 36},  {28, 6, 34}, {28, 6, 34}};
  std::string got;
  bool ok = true;
  for (int id = 1; id <= 6; ++id) {
    const auto c = circuit::gate_census(qnn::build_circuits(qnn::qnn_config(id)).composed);
    ok = ok && c == want[id - 1];
    got += " (" + std::to_string(c.single_qubit) + "," + std::to_string(c.two_qubit) + "," +
           std::to_string(c.total) + ")";
  }
  return ok ? pass("censuses" + got) : fail("censuses" + got);
}

// ---- feature map ------------------------------------------------------------

Verdict feature_map() {
  Rng rng(2024);
  const auto one = circuit::build_z_feature_map(1, 1);
  const auto four = circuit::build_z_feature_map(4, 2);
  const double r = 1.0 / std::sqrt(2.0);
  double worst1 = 0.0, worst2 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    const auto s = circuit::evaluate_circuit(one, std::span(&x, 1), {});
    worst1 = std::max(worst1, std::abs(s[0] - r));
    worst1 = std::max(worst1, std::abs(s[1] - r * std::polar(1.0, 2.0 * x)));

    std::vector<double> xs(4);
    for (auto &v : xs)
      v = rng.uniform(-1.0, 2.0);
    const auto got = circuit::evaluate_circuit(four, xs, {});
    const auto ref = oracle::circuit_state(four, xs, {});
    for (std::size_t k = 0; k < 16; ++k)
      worst2 = std::max(worst2, std::abs(got[k] - ref(static_cast<Eigen::Index>(k))));
  }
  const std::string d = "reps=1 max err " + fmt("%.2e", worst1) + ", reps=2 max err " +
                        fmt("%.2e", worst2);
  return worst1 <= 1e-12 && worst2 <= 1e-10 ? pass(d) : fail(d);
}

// ---- gradients --------------------------------------------------------------

Verdict gradients() {
  Rng rng(77);
  double worst = 0.0;
  int draws = 0;
  for (const auto &cfg : qnn::all_qnn_configs()) {
    for (int draw = 0; draw < 100; ++draw, ++draws) {
      Matrix X(8, 4);
      std::vector<double> y(8), p(12);
      for (std::size_t r = 0; r < 8; ++r) {
        y[r] = rng.uniform();
        for (std::size_t c = 0; c < 4; ++c)
          X(r, c) = rng.uniform();
      }
      for (auto &v : p)
        v = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const qnn::QnnModel m(cfg, p);
      const auto g = qnn::param_shift_gradient(m, p, X, y);
      const auto fd = oracle::central_difference(
          [&](const std::vector<double> &q) { return qnn::mse_loss(m, q, X, y); }, p);
      for (std::size_t k = 0; k < 12; ++k)
        worst = std::max(worst, std::abs(g[k] - fd[k]) / std::max(1.0, std::abs(fd[k])));
    }
  }
  const std::string d = std::to_string(draws) + " draws, max rel err " + fmt("%.2e", worst);
  return worst <= 1e-5 ? pass(d) : fail(d);
}

// ---- optimizer ----------------------------------------------------------------

Verdict optimizer(const bench::BenchmarkReport &run) {
  const double a[3] = {1, 2, 3};
  auto sphere = [&](std::span<const double> x, std::span<double> g) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      g[i] = 2.0 * (x[i] - a[i]);
      s += (x[i] - a[i]) * (x[i] - a[i]);
    }
    return s;
  };
  const auto rs = optim::minimize(sphere, std::vector<double>(3, 0.0));
  double err = 0.0;
  for (int i = 0; i < 3; ++i)
    err = std::max(err, std::abs(rs.x_final[i] - a[i]));
  const bool sphere_ok = rs.n_iters <= 3 && err <= 1e-8;

  optim::OptimizeOptions long_run;
  long_run.max_iter = 100;
  const std::vector<double> x0{-1.2, 1.0};
  const auto rb = optim::minimize(oracle::rosenbrock, x0, long_run);
  const auto capped = optim::minimize(oracle::rosenbrock, x0);
  const bool rosen_ok = rb.f_final < 1e-6 && capped.n_iters <= 25 && capped.f_history.size() <= 25;

  std::size_t runs = 0, bad = 0;
  for (const auto &r : run.results) {
    if (!r.model.is_qnn())
      continue;
    for (const auto &f : r.cv.folds) {
      ++runs;
      bad += f.descent ? 0 : 1;
    }
    ++runs;
    bad += r.holdout.descent ? 0 : 1;
  }
  const std::string d = "sphere " + std::to_string(rs.n_iters) + " iters err " +
                        fmt("%.1e", err) + ", rosenbrock f=" + fmt("%.2e", rb.f_final) +
                        ", descent violations " + std::to_string(bad) + "/" +
                        std::to_string(runs) + " QNN trainings";
  return sphere_ok && rosen_ok && bad == 0 && runs > 0 ? pass(d) : fail(d);
}

// ---- baselines ----------------------------------------------------------------

bool same_tree(const baselines::DecisionTreeRegressor &t, int id,
               const oracle::TreeOracleNode &ref) {
  const auto &n = t.nodes()[static_cast<std::size_t>(id)];
  if (n.is_leaf() != ref.leaf || n.n_samples != ref.n)
    return false;
  if (ref.leaf)
    return true;
  return static_cast<std::size_t>(n.feature) == ref.feature && n.threshold == ref.threshold &&
         same_tree(t, n.left, *ref.left) && same_tree(t, n.right, *ref.right);
}

Verdict baseline_oracles() {
  Rng rng(5150);
  int knn_bad = 0, tree_bad = 0;
  double ols_err = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const std::size_t n = 10 + rng.below(50);
    Matrix G(n, 4), U(n, 4);
    std::vector<double> yi(n), yu(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        G(r, c) = static_cast<double>(rng.below(4));
        U(r, c) = rng.uniform();
      }
      yi[r] = static_cast<double>(rng.below(9));
      yu[r] = 1.0 + U(r, 1) - 0.5 * U(r, 2) + 0.1 * rng.normal();
    }

    baselines::KnnRegressor knn;
    knn.fit(G, yi);
    for (int q = 0; q < 5; ++q) {
      std::vector<double> query(4);
      for (auto &v : query)
        v = static_cast<double>(rng.below(4));
      knn_bad += knn.neighbors(query) == oracle::knn_indices(G, query, 5, 2.0) ? 0 : 1;
    }

    baselines::DecisionTreeRegressor tree;
    tree.fit(G, yi);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    tree_bad += same_tree(tree, 0, *oracle::grow_tree(G, yi, idx)) ? 0 : 1;

    const auto lin = baselines::ols_fit(U, yu);
    const auto ref = oracle::ols_normal_equations(U, yu);
    ols_err = std::max(ols_err, std::abs(lin.intercept - static_cast<double>(ref[0])));
    for (std::size_t j = 0; j < 4; ++j)
      ols_err = std::max(ols_err, std::abs(lin.weights[j] - static_cast<double>(ref[j + 1])));
  }
  const std::string d = "kNN mismatches " + std::to_string(knn_bad) + "/250, tree mismatches " +
                        std::to_string(tree_bad) + "/50, OLS max err " + fmt("%.2e", ols_err);
  return knn_bad == 0 && tree_bad == 0 && ols_err <= 1e-8 ? pass(d) : fail(d);
}

// ---- stability score ------------------------------------------------------------

Verdict stability_score() {
  const std::vector<std::pair<std::string, bench::StabilityTerms>> terms{
      {"QNN-1", {0.003, 0.004, 0.011}}, {"QNN-2", {0.009, 0.033, 0.013}},
      {"QNN-3", {0.004, 0.015, 0.011}}, {"QNN-4", {0.006, 0.020, 0.011}},
      {"QNN-5", {0.002, 0.002, 0.011}}, {"QNN-6", {0.002, 0.003, 0.010}}};
  const double published[6] = {0.41, 3.00, 1.26, 1.61, 0.38, 0.07};
  const int rank[6] = {3, 6, 4, 5, 2, 1};
  const auto s = bench::score_stability(terms);
  bool ok = std::abs(s[1].sc - 3.0) <= 1e-12;
  double worst = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    ok = ok && s[i].rank == rank[i];
    worst = std::max(worst, std::abs(s[i].sc - published[i]));
  }
  ok = ok && worst <= 0.25;
  const std::string d = "QNN-2 SC " + fmt("%.6f", s[1].sc) + ", max |SC - published| " +
                        fmt("%.3f", worst);
  return ok ? pass(d) : fail(d);
}

// ---- time model ------------------------------------------------------------------

Verdict time_model() {
  const double sizes[4] = {800, 1600, 2400, 3200};
  const double minutes[6][4] = {{26.33, 51.92, 77.52, 104.68}, {23.89, 47.44, 72.03, 94.80},
                                {23.71, 47.43, 72.18, 96.83},  {24.65, 47.57, 73.34, 96.17},
                                {23.10, 47.54, 68.62, 92.53},  {23.51, 45.62, 68.65, 92.71}};
  std::vector<bench::TimeModel> models;
  for (const auto &row : minutes) {
    std::vector<bench::TimePoint> pts;
    for (int i = 0; i < 4; ++i)
      pts.push_back({sizes[i], row[i]});
    models.push_back(bench::fit_time_model(pts));
  }
  const auto ranks = bench::rank_by_slope(models);
  const bool ok = std::abs(models[0].slope - 3.26e-2) <= 5e-4 &&
                  std::abs(models[0].intercept + 0.05) <= 0.5 &&
                  ranks == std::vector<int>{6, 3, 5, 4, 1, 2};
  std::string r;
  for (int v : ranks)
    r += std::to_string(v);
  const std::string d = "QNN-1 slope " + fmt("%.4e", models[0].slope) + " intercept " +
                        fmt("%.3f", models[0].intercept) + ", ranks QNN-1..6 = " + r;
  return ok ? pass(d) : fail(d);
}

// ---- linearity at desk scale -------------------------------------------------------

Verdict linearity() {
  auto cfg = bench::load_experiment(kSourceDir / "configs" / "desk.json");
  const auto report = bench::run_benchmark(cfg);
  std::string d;
  bool ok = true;
  int checked = 0;
  for (const auto &t : report.timing) {
    if (!t.model.starts_with("QNN"))
      continue;
    ++checked;
    const double r2 = t.fit ? t.fit->fit_r2 : 0.0;
    ok = ok && r2 >= 0.98;
    d += t.model + " r2=" + fmt("%.4f", r2) + " ";
  }
  d += "(training sizes 200..800)";
  return ok && checked == 6 ? pass(d) : fail(d);
}

// ---- learning capability -------------------------------------------------------------

Verdict learning(const bench::BenchmarkReport &run) {
  const std::size_t size = 1000; // 800 training rows
  double best_qnn = -1e300, ols = 0.0;
  bool all_positive = true;
  std::string d;
  for (const auto &spec : bench::all_models()) {
    const auto *r = run.find(spec.name, size);
    if (!r || !r->holdout.metrics.r2)
      return fail("missing hold-out result for " + spec.name);
    const double r2 = *r->holdout.metrics.r2;
    all_positive = all_positive && r2 > 0.0;
    if (spec.is_qnn())
      best_qnn = std::max(best_qnn, r2);
    if (spec.kind == bench::ModelKind::Lr)
      ols = r2;
  }
  d = "best QNN R2 " + fmt("%.4f", best_qnn) + " vs OLS " + fmt("%.4f", ols) +
      (all_positive ? ", all R2 > 0" : ", some R2 <= 0");
  return all_positive && best_qnn >= ols ? pass(d) : fail(d);
}

// ---- conditional reproduction on the turbine data -------------------------------------

Verdict reproduction() {
  const char *path = std::getenv("QNNBENCH_DATASET");
  if (!path || !*path)
    return {Verdict::Skip, "QNNBENCH_DATASET not set"};
  auto cfg = bench::load_experiment(kSourceDir / "configs" / "turbine.json");
  cfg.dataset_path = fs::path(path);
  cfg.timing.enabled = false;
  cfg.threads = 0;
  const auto report = bench::run_benchmark(cfg);
  bool ok = true;
  std::string d = "CV R2 at 800:";
  double best_rmse = 1e300;
  for (const auto &spec : bench::all_models()) {
    if (!spec.is_qnn())
      continue;
    const auto *r = report.find(spec.name, 1000);
    if (!r)
      return fail("missing result for " + spec.name);
    ok = ok && r->cv.r2.mean >= 0.85 && r->cv.r2.mean <= 0.95;
    d += " " + fmt("%.3f", r->cv.r2.mean);
    best_rmse = std::min(best_rmse, r->holdout.metrics.rmse);
  }
  ok = ok && std::abs(best_rmse - 174.67) <= 0.15 * 174.67;
  d += ", best hold-out RMSE " + fmt("%.2f", best_rmse) + " kW";
  return ok ? pass(d) : fail(d);
}

// ---- determinism -------------------------------------------------------------------------

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict determinism(const bench::BenchmarkReport &first, bench::ExperimentConfig cfg) {
  const auto second = bench::run_benchmark(cfg);
  const auto base = fs::temp_directory_path() / "qnnbench_acceptance";
  fs::remove_all(base);
  bench::write_report(first, base / "a");
  bench::write_report(second, base / "b");
  std::size_t files = 0, differ = 0;
  for (const auto &e : fs::recursive_directory_iterator(base / "a")) {
    if (e.path().filename() != "metrics.json")
      continue;
    ++files;
    const auto other = base / "b" / fs::relative(e.path(), base / "a");
    differ += slurp(e.path()) == slurp(other) ? 0 : 1;
  }
  fs::remove_all(base);
  const std::string d = std::to_string(differ) + " of " + std::to_string(files) +
                        " metrics.json files differ";
  return files == 36 && differ == 0 ? pass(d) : fail(d);
}

} // namespace

int main() {
  int failures = 0;
  auto report = [&](const char *name, const std::function<Verdict()> &check) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception &e) {
      v = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char *tag = v.state == Verdict::Pass ? "PASS" : v.state == Verdict::Skip ? "SKIP" : "FAIL";
    failures += v.state == Verdict::Fail ? 1 : 0;
    std::printf("%s %-22s %s [%.1f s]\n", tag, name, v.detail.c_str(), secs);
    std::fflush(stdout);
  };

  report("gate_counts", gate_counts);
  report("feature_map", feature_map);
  report("gradients", gradients);
  report("baseline_oracles", baseline_oracles);
  report("stability_score", stability_score);
  report("time_model", time_model);

  // one full synthetic protocol run feeds three criteria
  auto full = bench::load_experiment(kSourceDir / "configs" / "synthetic_full.json");
  full.timing.enabled = false;
  full.threads = 0;
  bench::BenchmarkReport run;
  std::string run_error;
  try {
    run = bench::run_benchmark(full);
  } catch (const std::exception &e) {
    run_error = e.what();
  }
  auto needs_run = [&](std::function<Verdict()> f) {
    return [f, &run_error]() { return run_error.empty() ? f() : fail("run failed: " + run_error); };
  };

  report("optimizer", needs_run([&] { return optimizer(run); }));
  report("learning_capability", needs_run([&] { return learning(run); }));
  report("determinism", needs_run([&] { return determinism(run, full); }));
  report("linearity_desk", linearity);
  report("turbine_reproduction", reproduction);

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
