#include "qnnbench/qnn/serialize.hpp"

#include "qnnbench/core/errors.hpp"

namespace qnnbench::qnn {

nlohmann::json scaler_to_json(const data::ScalerParams &scaler) {
  nlohmann::json columns = nlohmann::json::array();
  for (auto name : data::kColumnNames)
    columns.push_back(std::string(name));
  return {{"columns", columns}, {"min", scaler.min}, {"max", scaler.max}};
}

data::ScalerParams scaler_from_json(const nlohmann::json &doc) {
  data::ScalerParams s;
  doc.at("min").get_to(s.min);
  doc.at("max").get_to(s.max);
  return s;
}

nlohmann::json to_json(const TrainedQnn &trained) {
  const auto &m = trained.model;
  return {{"config", m.config().name},
          {"strategy", std::string(circuit::to_string(m.config().strategy))},
          {"params", std::vector<double>(m.params().begin(), m.params().end())},
          {"scaler", scaler_to_json(trained.scaler)},
          {"seed", trained.seed},
          {"loss_history", trained.history.values}};
}

TrainedQnn trained_qnn_from_json(const nlohmann::json &doc) {
  try {
    const auto name = doc.at("config").get<std::string>();
    auto config = find_qnn_config(name);
    if (!config)
      throw ConfigError("unknown QNN configuration \"" + name + "\"");
    const auto strategy = doc.at("strategy").get<std::string>();
    if (strategy != circuit::to_string(config->strategy))
      throw ConfigError("strategy \"" + strategy + "\" does not match " + name);
    QnnModel model(*config, doc.at("params").get<std::vector<double>>());
    LossHistory history{doc.at("loss_history").get<std::vector<double>>()};
    return TrainedQnn{std::move(model), std::move(history), scaler_from_json(doc.at("scaler")),
                      doc.at("seed").get<std::uint64_t>()};
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("malformed model document: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("malformed model document: ") + e.what());
  }
}

} // namespace qnnbench::qnn
