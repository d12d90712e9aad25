#include "qnnbench/qnn/config.hpp"

#include <array>
#include <stdexcept>

namespace qnnbench::qnn {

namespace {

std::array<QnnConfig, kNumQnnConfigs> make_table() {
  std::array<QnnConfig, kNumQnnConfigs> table;
  for (int i = 0; i < kNumQnnConfigs; ++i) {
    table[i].id = i + 1;
    table[i].name = "QNN-" + std::to_string(i + 1);
    table[i].strategy = circuit::kAllEntanglements[i];
  }
  return table;
}

const std::array<QnnConfig, kNumQnnConfigs> &table() {
  static const auto t = make_table();
  return t;
}

} // namespace

QnnConfig qnn_config(int id) {
  if (id < 1 || id > kNumQnnConfigs)
    throw std::invalid_argument("qnn_config: id must be in 1..6");
  return table()[static_cast<std::size_t>(id - 1)];
}

std::optional<QnnConfig> find_qnn_config(std::string_view name) {
  for (const auto &c : table())
    if (c.name == name)
      return c;
  return std::nullopt;
}

std::span<const QnnConfig> all_qnn_configs() { return table(); }

QnnCircuits build_circuits(const QnnConfig &config) {
  auto fm = circuit::build_z_feature_map(config.n_qubits, config.feature_reps, config.rotation);
  auto ansatz = circuit::build_real_amplitudes(config.n_qubits, config.ansatz_reps, config.strategy);
  auto composed = circuit::compose(fm, ansatz);
  return {std::move(fm), std::move(ansatz), std::move(composed)};
}

} // namespace qnnbench::qnn
