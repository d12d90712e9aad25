#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qnnbench/quantum/gates.hpp"
#include "qnnbench/quantum/state_vector.hpp"

namespace qnnbench::circuit {

enum class SlotRole { Feature, Trainable };

// A symbolic gate angle: angle = multiplier * value, where value comes from
// the feature vector (Feature) or the parameter vector (Trainable).
struct ParamSlot {
  SlotRole role = SlotRole::Trainable;
  std::size_t index = 0;
  double multiplier = 1.0;

  bool operator==(const ParamSlot &) const = default;
};

struct Instruction {
  quantum::GateKind kind = quantum::GateKind::H;
  int qubit0 = 0;
  int qubit1 = -1; // CNOT target; -1 for single-qubit gates
  std::optional<ParamSlot> slot;

  bool operator==(const Instruction &) const = default;
};

struct GateCensus {
  std::size_t single_qubit = 0;
  std::size_t two_qubit = 0;
  std::size_t total = 0;

  bool operator==(const GateCensus &) const = default;
};

// Ordered gate list over a fixed qubit register. Immutable once built and
// safe to share between threads.
class Circuit {
public:
  explicit Circuit(int n_qubits, std::size_t n_feature_slots = 0,
                   std::size_t n_trainable_slots = 0);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_feature_slots() const noexcept { return n_feature_slots_; }
  std::size_t n_trainable_slots() const noexcept { return n_trainable_slots_; }
  const std::vector<Instruction> &instructions() const noexcept { return instructions_; }
  std::size_t size() const noexcept { return instructions_.size(); }

  // Single-qubit gate, optionally bound to a slot. Parameterised kinds
  // (P, RZ, RY) require a slot; H must not carry one.
  void add_gate(quantum::GateKind kind, int qubit, std::optional<ParamSlot> slot = {});
  void add_cnot(int control, int target);

private:
  void check_qubit(int qubit) const;

  int n_qubits_;
  std::size_t n_feature_slots_;
  std::size_t n_trainable_slots_;
  std::vector<Instruction> instructions_;
};

// Concatenate instruction lists; slot counts become the larger of the two.
// Throws std::invalid_argument on a qubit-count mismatch.
Circuit compose(const Circuit &first, const Circuit &second);

GateCensus gate_census(const Circuit &circuit);

// Apply every instruction to `state` with bound angles.
void apply_circuit(const Circuit &circuit, quantum::StateVector &state,
                   std::span<const double> features, std::span<const double> params);

// Run the circuit on |0...0>. Throws std::invalid_argument if the binding
// lengths differ from the declared slot counts.
quantum::StateVector evaluate_circuit(const Circuit &circuit, std::span<const double> features,
                                      std::span<const double> params);

} // namespace qnnbench::circuit
