#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qnnbench/circuit/circuit.hpp"
#include "qnnbench/circuit/library.hpp"
#include "qnnbench/quantum/state_vector.hpp"

namespace qnnbench::qnn {

// One of the six benchmarked regressors: Z feature map followed by a
// Real-Amplitudes ansatz with a given entanglement strategy.
struct QnnConfig {
  int id = 1; // 1..6
  std::string name; // "QNN-1" ... "QNN-6"
  circuit::Entanglement strategy = circuit::Entanglement::Full;
  int n_qubits = 4;
  int feature_reps = 2;
  int ansatz_reps = 2;
  quantum::Observable observable = quantum::Observable::ParityZ;
  circuit::FeatureRotation rotation = circuit::FeatureRotation::Phase;
};

inline constexpr int kNumQnnConfigs = 6;

// QNN-1 Full, QNN-2 Linear, QNN-3 Circular, QNN-4 SCA, QNN-5 ReverseLinear,
// QNN-6 Pairwise. Throws std::invalid_argument outside 1..6.
QnnConfig qnn_config(int id);
std::optional<QnnConfig> find_qnn_config(std::string_view name);
std::span<const QnnConfig> all_qnn_configs();

struct QnnCircuits {
  circuit::Circuit feature_map;
  circuit::Circuit ansatz;
  circuit::Circuit composed;
};

QnnCircuits build_circuits(const QnnConfig &config);

} // namespace qnnbench::qnn
