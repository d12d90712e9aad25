#include "qnnbench/bench/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "qnnbench/core/errors.hpp"

namespace qnnbench::bench {

using nlohmann::json;

namespace {

json opt(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

std::string cell(const std::optional<double> &v) { return v ? format_double(*v) : ""; }

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out)
    throw std::runtime_error("write failed for " + path.string());
}

void write_json(const std::filesystem::path &path, const json &doc) {
  write_text(path, doc.dump(2) + "\n");
}

json history_json(const std::optional<qnn::LossHistory> &h) {
  return h ? json(h->values) : json(nullptr);
}

std::string loss_history_csv(const ModelSizeResult &r) {
  std::ostringstream os;
  os << "iteration,mean";
  for (const auto &f : r.cv.folds)
    os << ",fold_" << f.fold;
  os << ",holdout\n";
  if (!r.cv.mean_history)
    return os.str();
  for (std::size_t i = 0; i < r.cv.mean_history->values.size(); ++i) {
    os << i + 1 << ',' << format_double(r.cv.mean_history->values[i]);
    for (const auto &f : r.cv.folds)
      os << ',' << (f.history ? format_double(f.history->values[i]) : "");
    os << ',' << (r.holdout.history ? format_double(r.holdout.history->values[i]) : "") << '\n';
  }
  return os.str();
}

std::string residuals_csv(const HoldoutResult &h) {
  std::ostringstream os;
  os << "row,residual_kw\n";
  for (std::size_t i = 0; i < h.actual_kw.size(); ++i)
    os << h.row_index[i] << ',' << format_double(h.predicted_kw[i] - h.actual_kw[i]) << '\n';
  return os.str();
}

std::string predictions_csv(const HoldoutResult &h) {
  std::ostringstream os;
  os << "row,actual_kw,predicted_kw\n";
  for (std::size_t i = 0; i < h.actual_kw.size(); ++i)
    os << h.row_index[i] << ',' << format_double(h.actual_kw[i]) << ','
       << format_double(h.predicted_kw[i]) << '\n';
  return os.str();
}

const json &at(const json &j, const char *key, const std::string &where) {
  if (!j.is_object() || !j.contains(key))
    throw DataError(where + ": missing '" + key + "'");
  return j.at(key);
}

std::string fixed(const json &v, int digits) {
  if (!v.is_number())
    return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v.get<double>());
  return buf;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

json metrics_json(const ModelSizeResult &r) {
  json folds = json::array();
  for (const auto &f : r.cv.folds)
    folds.push_back({{"fold", f.fold},
                     {"n_validation", f.n_validation},
                     {"r2", opt(f.metrics.r2)},
                     {"rmse_kw", f.metrics.rmse},
                     {"final_loss", f.history ? json(f.history->final_loss()) : json(nullptr)}});
  json cv{{"folds", folds},
          {"r2_mean", r.cv.r2.mean},
          {"r2_std", r.cv.r2.std_dev},
          {"rmse_mean_kw", r.cv.rmse.mean},
          {"rmse_std_kw", r.cv.rmse.std_dev},
          {"mean_loss_history", history_json(r.cv.mean_history)}};
  if (r.model.is_qnn()) {
    cv["folds_converged_by_15"] = r.cv.folds_converged;
    cv["descent"] = r.cv.descent;
  }
  json hold{{"r2", opt(r.holdout.metrics.r2)},
            {"rmse_kw", r.holdout.metrics.rmse},
            {"residual_mean_kw", r.holdout.residuals.mean},
            {"residual_std_kw", r.holdout.residuals.std_dev},
            {"loss_history", history_json(r.holdout.history)}};
  if (r.model.is_qnn())
    hold["descent"] = r.holdout.descent;
  return {{"model", r.model.name},
          {"size", r.size},
          {"train_size", r.train_size},
          {"test_size", r.test_size},
          {"cv", cv},
          {"holdout", hold}};
}

json summary_json(const BenchmarkReport &report) {
  json cv = json::array(), hold = json::array();
  for (const auto &r : report.results) {
    cv.push_back({{"model", r.model.name},
                  {"size", r.size},
                  {"train_size", r.train_size},
                  {"r2_mean", r.cv.r2.mean},
                  {"r2_std", r.cv.r2.std_dev},
                  {"rmse_mean_kw", r.cv.rmse.mean},
                  {"rmse_std_kw", r.cv.rmse.std_dev}});
    hold.push_back({{"model", r.model.name},
                    {"size", r.size},
                    {"test_size", r.test_size},
                    {"r2", opt(r.holdout.metrics.r2)},
                    {"rmse_kw", r.holdout.metrics.rmse},
                    {"residual_mean_kw", r.holdout.residuals.mean},
                    {"residual_std_kw", r.holdout.residuals.std_dev}});
  }
  json stab = nullptr;
  if (report.stability) {
    stab = json::array();
    for (const auto &s : *report.stability)
      stab.push_back({{"model", s.name},
                      {"sd", s.sd},
                      {"ms", s.ms},
                      {"fl", s.fl},
                      {"sc", s.sc},
                      {"rank", s.rank}});
  }
  json out{{"config", to_json(report.config)},
           {"corpus_rows", report.corpus_rows},
           {"cv", cv},
           {"holdout", hold},
           {"stability", stab},
           {"warnings", report.warnings}};
  if (!report.stability_note.empty())
    out["stability_note"] = report.stability_note;
  return out;
}

json timing_json(const BenchmarkReport &report) {
  json models = json::array();
  for (const auto &t : report.timing) {
    json points = json::array();
    for (std::size_t i = 0; i < t.samples.size(); ++i)
      points.push_back({{"train_size", t.train_sizes[i]},
                        {"minutes_mean", t.samples[i].mean_minutes},
                        {"minutes_std", t.samples[i].std_minutes},
                        {"runs", t.samples[i].runs}});
    json fit = nullptr;
    if (t.fit)
      fit = {{"slope", t.fit->slope}, {"intercept", t.fit->intercept}, {"fit_r2", t.fit->fit_r2}};
    json entry{{"model", t.model}, {"points", points}, {"time_model", fit}};
    if (t.rank > 0)
      entry["rank"] = t.rank;
    models.push_back(entry);
  }
  return {{"repeats", report.config.timing.repeats},
          {"warmup", report.config.timing.warmup},
          {"models", models}};
}

void write_report(const BenchmarkReport &report, const std::filesystem::path &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ostringstream cv_csv, hold_csv, loss_csv, hist_csv;
  cv_csv << "model,size,train_size,r2_mean,r2_std,rmse_mean_kw,rmse_std_kw\n";
  hold_csv << "size,test_size,model,r2,rmse_kw,residual_mean_kw,residual_std_kw\n";
  loss_csv << "model,size,iteration,loss\n";
  hist_csv << "model,size,bin,lo_kw,hi_kw,count\n";

  for (const auto &r : report.results) {
    const auto sub = dir / r.model.name / std::to_string(r.size);
    fs::create_directories(sub);
    write_json(sub / "metrics.json", metrics_json(r));
    write_text(sub / "loss_history.csv", loss_history_csv(r));
    write_text(sub / "residuals.csv", residuals_csv(r.holdout));
    write_text(sub / "predictions.csv", predictions_csv(r.holdout));

    cv_csv << r.model.name << ',' << r.size << ',' << r.train_size << ','
           << format_double(r.cv.r2.mean) << ',' << format_double(r.cv.r2.std_dev) << ','
           << format_double(r.cv.rmse.mean) << ',' << format_double(r.cv.rmse.std_dev) << '\n';
    if (r.cv.mean_history)
      for (std::size_t i = 0; i < r.cv.mean_history->values.size(); ++i)
        loss_csv << r.model.name << ',' << r.size << ',' << i + 1 << ','
                 << format_double(r.cv.mean_history->values[i]) << '\n';
    const auto &h = r.holdout.residuals.histogram;
    const double width = (h.hi - h.lo) / static_cast<double>(h.counts.size());
    for (std::size_t b = 0; b < h.counts.size(); ++b)
      hist_csv << r.model.name << ',' << r.size << ',' << b << ','
               << format_double(h.lo + width * static_cast<double>(b)) << ','
               << format_double(h.lo + width * static_cast<double>(b + 1)) << ',' << h.counts[b]
               << '\n';
  }
  // hold-out comparison grouped by size, models in config order
  for (auto size : report.config.sizes)
    for (const auto &m : report.config.models)
      if (const auto *r = report.find(m.name, size))
        hold_csv << size << ',' << r->test_size << ',' << m.name << ','
                 << cell(r->holdout.metrics.r2) << ',' << format_double(r->holdout.metrics.rmse)
                 << ',' << format_double(r->holdout.residuals.mean) << ','
                 << format_double(r->holdout.residuals.std_dev) << '\n';

  write_json(dir / "summary.json", summary_json(report));
  write_text(dir / "cv_metrics.csv", cv_csv.str());
  write_text(dir / "holdout_comparison.csv", hold_csv.str());
  write_text(dir / "loss_curves.csv", loss_csv.str());
  write_text(dir / "error_histograms.csv", hist_csv.str());

  std::ostringstream stab_csv;
  stab_csv << "model,sd,ms,fl,sc,rank\n";
  if (report.stability)
    for (const auto &s : *report.stability)
      stab_csv << s.name << ',' << format_double(s.sd) << ',' << format_double(s.ms) << ','
               << format_double(s.fl) << ',' << format_double(s.sc) << ',' << s.rank << '\n';
  write_text(dir / "stability.csv", stab_csv.str());

  if (report.config.timing.enabled) {
    write_json(dir / "timing.json", timing_json(report));
    std::ostringstream time_csv;
    time_csv << "model,train_size,minutes_mean,minutes_std,minutes_fitted\n";
    for (const auto &t : report.timing)
      for (std::size_t i = 0; i < t.samples.size(); ++i) {
        const double x = static_cast<double>(t.train_sizes[i]);
        time_csv << t.model << ',' << t.train_sizes[i] << ','
                 << format_double(t.samples[i].mean_minutes) << ','
                 << format_double(t.samples[i].std_minutes) << ','
                 << (t.fit ? format_double(t.fit->slope * x + t.fit->intercept) : "") << '\n';
      }
    write_text(dir / "time_vs_size.csv", time_csv.str());
  }
}

std::string compare_report(const std::filesystem::path &dir) {
  auto read = [](const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in)
      throw DataError("cannot open " + p.string());
    try {
      return json::parse(in);
    } catch (const json::parse_error &e) {
      throw DataError(p.string() + ": " + e.what());
    }
  };
  const auto summary = read(dir / "summary.json");
  const std::string where = (dir / "summary.json").string();
  std::ostringstream os;
  char line[160];

  os << "cross-validation (mean +- std over folds)\n";
  std::snprintf(line, sizeof line, "%-8s %6s %16s %22s\n", "model", "train", "R2", "RMSE kW");
  os << line;
  for (const auto &r : at(summary, "cv", where)) {
    std::snprintf(line, sizeof line, "%-8s %6zu %7s +- %-6s %10s +- %-8s\n",
                  r.at("model").get<std::string>().c_str(), r.at("train_size").get<std::size_t>(),
                  fixed(r.at("r2_mean"), 3).c_str(), fixed(r.at("r2_std"), 3).c_str(),
                  fixed(r.at("rmse_mean_kw"), 2).c_str(), fixed(r.at("rmse_std_kw"), 2).c_str());
    os << line;
  }

  os << "\nhold-out\n";
  std::map<std::size_t, std::vector<json>> by_test;
  for (const auto &r : at(summary, "holdout", where))
    by_test[r.at("test_size").get<std::size_t>()].push_back(r);
  std::snprintf(line, sizeof line, "%5s %-8s %7s %10s %10s %10s\n", "test", "model", "R2",
                "RMSE kW", "bias kW", "spread kW");
  os << line;
  for (const auto &[test, rows] : by_test) {
    const json *best = nullptr;
    for (const auto &r : rows) {
      std::snprintf(line, sizeof line, "%5zu %-8s %7s %10s %10s %10s\n", test,
                    r.at("model").get<std::string>().c_str(), fixed(r.at("r2"), 3).c_str(),
                    fixed(r.at("rmse_kw"), 2).c_str(), fixed(r.at("residual_mean_kw"), 2).c_str(),
                    fixed(r.at("residual_std_kw"), 2).c_str());
      os << line;
      if (!best || r.at("rmse_kw").get<double>() < best->at("rmse_kw").get<double>())
        best = &r;
    }
    os << "      lowest RMSE: " << best->at("model").get<std::string>() << '\n';
  }

  const auto &stab = at(summary, "stability", where);
  if (stab.is_array()) {
    os << "\nstability\n";
    std::snprintf(line, sizeof line, "%-8s %8s %8s %8s %6s %4s\n", "model", "SD", "MS", "FL", "SC",
                  "rank");
    os << line;
    for (const auto &s : stab) {
      std::snprintf(line, sizeof line, "%-8s %8s %8s %8s %6s %4d\n",
                    s.at("model").get<std::string>().c_str(), fixed(s.at("sd"), 4).c_str(),
                    fixed(s.at("ms"), 4).c_str(), fixed(s.at("fl"), 4).c_str(),
                    fixed(s.at("sc"), 3).c_str(), s.at("rank").get<int>());
      os << line;
    }
  }

  if (std::filesystem::exists(dir / "timing.json")) {
    const auto timing = read(dir / "timing.json");
    os << "\ntraining time (full CV, minutes)\n";
    for (const auto &m : at(timing, "models", "timing.json")) {
      os << m.at("model").get<std::string>() << ':';
      for (const auto &p : m.at("points"))
        os << ' ' << p.at("train_size").get<std::size_t>() << '=' << fixed(p.at("minutes_mean"), 4);
      const auto &fit = m.at("time_model");
      if (fit.is_object()) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  slope %.3e intercept %.4f r2 %.4f",
                      fit.at("slope").get<double>(), fit.at("intercept").get<double>(),
                      fit.at("fit_r2").get<double>());
        os << buf;
      }
      if (m.contains("rank"))
        os << "  rank " << m.at("rank").get<int>();
      os << '\n';
    }
  }
  return os.str();
}

} // namespace qnnbench::bench
