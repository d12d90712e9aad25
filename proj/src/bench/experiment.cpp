#include "qnnbench/bench/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "qnnbench/core/errors.hpp"
#include "qnnbench/data/split.hpp"

namespace qnnbench::bench {

using nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void reject_unknown(const json &obj, std::initializer_list<std::string_view> known,
                    const std::string &where) {
  for (const auto &[key, value] : obj.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(where + ": unknown key '" + key + "'");
}

const json &require_object(const json &j, const std::string &where) {
  if (!j.is_object())
    throw ConfigError(where + ": expected an object");
  return j;
}

template <typename T> T get_as(const json &j, const std::string &where) {
  try {
    return j.get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::uint64_t get_u64(const json &j, const std::string &where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ConfigError(where + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

} // namespace

ModelSpec parse_model(std::string_view name) {
  const auto key = lower(name);
  if (key == "knn")
    return {"kNN", ModelKind::Knn, std::nullopt};
  if (key == "dtr")
    return {"DTR", ModelKind::Dtr, std::nullopt};
  if (key == "lr")
    return {"LR", ModelKind::Lr, std::nullopt};
  for (const auto &c : qnn::all_qnn_configs())
    if (lower(c.name) == key)
      return {c.name, ModelKind::Qnn, c};
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected QNN-1..QNN-6, kNN, DTR or LR)");
}

std::vector<ModelSpec> all_models() {
  std::vector<ModelSpec> out;
  for (const auto &c : qnn::all_qnn_configs())
    out.push_back({c.name, ModelKind::Qnn, c});
  out.push_back(parse_model("kNN"));
  out.push_back(parse_model("DTR"));
  out.push_back(parse_model("LR"));
  return out;
}

ExperimentConfig parse_experiment(const json &doc, const std::filesystem::path &base_dir) {
  require_object(doc, "config");
  reject_unknown(doc,
                 {"data", "seed", "models", "sizes", "folds", "optimizer", "timing", "threads",
                  "output_dir"},
                 "config");
  ExperimentConfig cfg;

  if (!doc.contains("data"))
    throw ConfigError("config: missing 'data'");
  const auto &d = require_object(doc.at("data"), "data");
  reject_unknown(d, {"path", "synthetic", "rows", "aliases"}, "data");
  if (d.contains("synthetic"))
    cfg.synthetic = get_as<bool>(d.at("synthetic"), "data.synthetic");
  if (d.contains("path")) {
    std::filesystem::path p = get_as<std::string>(d.at("path"), "data.path");
    cfg.dataset_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  if (cfg.synthetic == cfg.dataset_path.has_value())
    throw ConfigError("data: give exactly one of 'path' or 'synthetic: true'");
  if (d.contains("rows")) {
    if (!cfg.synthetic)
      throw ConfigError("data.rows: only valid with synthetic data");
    cfg.synthetic_rows = get_u64(d.at("rows"), "data.rows");
  }
  if (d.contains("aliases")) {
    const auto &a = require_object(d.at("aliases"), "data.aliases");
    for (const auto &[key, value] : a.items()) {
      if (std::find(data::kColumnNames.begin(), data::kColumnNames.end(), key) ==
          data::kColumnNames.end())
        throw ConfigError("data.aliases: unknown column '" + key + "'");
      cfg.aliases[key] = get_as<std::string>(value, "data.aliases." + key);
    }
  }

  if (!doc.contains("seed"))
    throw ConfigError("config: missing 'seed'");
  cfg.seed = get_u64(doc.at("seed"), "seed");

  if (doc.contains("models")) {
    if (!doc.at("models").is_array() || doc.at("models").empty())
      throw ConfigError("models: expected a non-empty array");
    std::set<std::string> seen;
    for (const auto &m : doc.at("models")) {
      auto spec = parse_model(get_as<std::string>(m, "models"));
      if (!seen.insert(spec.name).second)
        throw ConfigError("models: duplicate '" + spec.name + "'");
      cfg.models.push_back(std::move(spec));
    }
  } else {
    cfg.models = all_models();
  }

  if (!doc.contains("sizes") || !doc.at("sizes").is_array() || doc.at("sizes").empty())
    throw ConfigError("sizes: expected a non-empty array");
  for (const auto &s : doc.at("sizes")) {
    const auto size = get_u64(s, "sizes");
    if (std::find(cfg.sizes.begin(), cfg.sizes.end(), size) != cfg.sizes.end())
      throw ConfigError("sizes: duplicate " + std::to_string(size));
    cfg.sizes.push_back(size);
  }

  if (doc.contains("folds"))
    cfg.folds = get_as<int>(doc.at("folds"), "folds");
  if (cfg.folds < 2)
    throw ConfigError("folds: must be >= 2");
  for (auto size : cfg.sizes)
    if (data::train_count(size) < static_cast<std::size_t>(cfg.folds) * 2)
      throw ConfigError("sizes: " + std::to_string(size) + " is too small for " +
                        std::to_string(cfg.folds) + " folds");

  if (doc.contains("optimizer")) {
    const auto &o = require_object(doc.at("optimizer"), "optimizer");
    reject_unknown(o, {"max_iter", "grad_tol", "memory"}, "optimizer");
    auto &opt = cfg.train.optimizer;
    if (o.contains("max_iter"))
      opt.max_iter = get_as<int>(o.at("max_iter"), "optimizer.max_iter");
    if (o.contains("grad_tol"))
      opt.grad_tol = get_as<double>(o.at("grad_tol"), "optimizer.grad_tol");
    if (o.contains("memory"))
      opt.memory = get_as<int>(o.at("memory"), "optimizer.memory");
    if (opt.max_iter < 1 || opt.memory < 1 || !(opt.grad_tol >= 0.0))
      throw ConfigError("optimizer: max_iter and memory must be >= 1, grad_tol >= 0");
  }

  if (doc.contains("timing")) {
    const auto &t = require_object(doc.at("timing"), "timing");
    reject_unknown(t, {"enabled", "repeats", "warmup"}, "timing");
    if (t.contains("enabled"))
      cfg.timing.enabled = get_as<bool>(t.at("enabled"), "timing.enabled");
    if (t.contains("repeats"))
      cfg.timing.repeats = get_as<int>(t.at("repeats"), "timing.repeats");
    if (cfg.timing.repeats < 1)
      throw ConfigError("timing.repeats: must be >= 1");
    if (t.contains("warmup"))
      cfg.timing.warmup = get_as<int>(t.at("warmup"), "timing.warmup");
    if (cfg.timing.warmup < 0)
      throw ConfigError("timing.warmup: must be >= 0");
  }

  if (doc.contains("threads"))
    cfg.threads = static_cast<unsigned>(get_u64(doc.at("threads"), "threads"));
  if (doc.contains("output_dir")) {
    std::filesystem::path p = get_as<std::string>(doc.at("output_dir"), "output_dir");
    cfg.output_dir = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  return cfg;
}

ExperimentConfig load_experiment(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_experiment(doc, path.parent_path());
}

json to_json(const ExperimentConfig &cfg) {
  json data;
  if (cfg.synthetic)
    data = {{"synthetic", true}, {"rows", cfg.synthetic_rows}};
  else
    data = {{"path", cfg.dataset_path->generic_string()}};
  if (!cfg.aliases.empty())
    data["aliases"] = cfg.aliases;
  json models = json::array();
  for (const auto &m : cfg.models)
    models.push_back(m.name);
  return {{"data", data},
          {"seed", cfg.seed},
          {"models", models},
          {"sizes", cfg.sizes},
          {"folds", cfg.folds},
          {"optimizer",
           {{"max_iter", cfg.train.optimizer.max_iter},
            {"grad_tol", cfg.train.optimizer.grad_tol},
            {"memory", cfg.train.optimizer.memory}}},
          {"timing", {{"enabled", cfg.timing.enabled}, {"repeats", cfg.timing.repeats},
                      {"warmup", cfg.timing.warmup}}}};
}

} // namespace qnnbench::bench
