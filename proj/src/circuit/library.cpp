#include "qnnbench/circuit/library.hpp"

#include <algorithm>
#include <stdexcept>

namespace qnnbench::circuit {

using quantum::GateKind;

std::string_view to_string(Entanglement strategy) {
  switch (strategy) {
  case Entanglement::Full:
    return "full";
  case Entanglement::Linear:
    return "linear";
  case Entanglement::Circular:
    return "circular";
  case Entanglement::SCA:
    return "sca";
  case Entanglement::ReverseLinear:
    return "reverse_linear";
  case Entanglement::Pairwise:
    return "pairwise";
  }
  return "?";
}

std::optional<Entanglement> parse_entanglement(std::string_view name) {
  for (auto s : kAllEntanglements)
    if (to_string(s) == name)
      return s;
  return std::nullopt;
}

std::vector<QubitPair> entangler_pairs(Entanglement strategy, int n_qubits, int layer) {
  if (n_qubits < 2)
    throw std::invalid_argument("entangler_pairs: need at least 2 qubits");
  if (layer < 0)
    throw std::invalid_argument("entangler_pairs: negative layer");

  std::vector<QubitPair> linear;
  for (int i = 0; i + 1 < n_qubits; ++i)
    linear.emplace_back(i, i + 1);

  switch (strategy) {
  case Entanglement::Full: {
    std::vector<QubitPair> pairs;
    for (int i = 0; i < n_qubits; ++i)
      for (int j = i + 1; j < n_qubits; ++j)
        pairs.emplace_back(i, j);
    return pairs;
  }
  case Entanglement::Linear:
    return linear;
  case Entanglement::ReverseLinear:
    std::reverse(linear.begin(), linear.end());
    return linear;
  case Entanglement::Pairwise: {
    std::vector<QubitPair> pairs;
    for (std::size_t i = 0; i < linear.size(); i += 2)
      pairs.push_back(linear[i]);
    for (std::size_t i = 1; i < linear.size(); i += 2)
      pairs.push_back(linear[i]);
    return pairs;
  }
  case Entanglement::Circular:
  case Entanglement::SCA: {
    std::vector<QubitPair> circular;
    if (n_qubits > 2)
      circular.emplace_back(n_qubits - 1, 0);
    circular.insert(circular.end(), linear.begin(), linear.end());
    if (strategy == Entanglement::Circular)
      return circular;

    const auto shift = static_cast<std::size_t>(layer) % circular.size();
    std::rotate(circular.begin(), circular.end() - static_cast<std::ptrdiff_t>(shift),
                circular.end());
    if (layer % 2 == 1)
      for (auto &[c, t] : circular)
        std::swap(c, t);
    return circular;
  }
  }
  throw std::invalid_argument("entangler_pairs: unknown strategy");
}

Circuit build_z_feature_map(int n_qubits, int reps, FeatureRotation rotation) {
  if (reps < 1)
    throw std::invalid_argument("build_z_feature_map: reps must be >= 1");
  if (n_qubits < 1)
    throw std::invalid_argument("build_z_feature_map: need at least 1 qubit");

  const auto rot = rotation == FeatureRotation::Phase ? GateKind::P : GateKind::RZ;
  Circuit c(n_qubits, static_cast<std::size_t>(n_qubits), 0);
  for (int r = 0; r < reps; ++r) {
    for (int q = 0; q < n_qubits; ++q)
      c.add_gate(GateKind::H, q);
    for (int q = 0; q < n_qubits; ++q)
      c.add_gate(rot, q, ParamSlot{SlotRole::Feature, static_cast<std::size_t>(q), 2.0});
  }
  return c;
}

Circuit build_real_amplitudes(int n_qubits, int reps, Entanglement strategy) {
  if (reps < 1)
    throw std::invalid_argument("build_real_amplitudes: reps must be >= 1");
  if (n_qubits < 2)
    throw std::invalid_argument("build_real_amplitudes: need at least 2 qubits");

  const auto n = static_cast<std::size_t>(n_qubits);
  Circuit c(n_qubits, 0, n * static_cast<std::size_t>(reps + 1));
  auto rotation_layer = [&](int layer) {
    for (int q = 0; q < n_qubits; ++q)
      c.add_gate(GateKind::RY, q,
                 ParamSlot{SlotRole::Trainable, static_cast<std::size_t>(layer) * n +
                                                    static_cast<std::size_t>(q),
                           1.0});
  };

  rotation_layer(0);
  for (int layer = 0; layer < reps; ++layer) {
    for (auto [control, target] : entangler_pairs(strategy, n_qubits, layer))
      c.add_cnot(control, target);
    rotation_layer(layer + 1);
  }
  return c;
}

} // namespace qnnbench::circuit
