#include "qnnbench/circuit/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qnnbench::circuit {

using quantum::GateKind;

Circuit::Circuit(int n_qubits, std::size_t n_feature_slots, std::size_t n_trainable_slots)
    : n_qubits_(n_qubits), n_feature_slots_(n_feature_slots),
      n_trainable_slots_(n_trainable_slots) {
  if (n_qubits < 1 || n_qubits > quantum::kMaxQubits)
    throw std::invalid_argument("Circuit: qubit count out of range");
}

void Circuit::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_)
    throw std::out_of_range("Circuit: qubit " + std::to_string(qubit) + " out of range");
}

void Circuit::add_gate(GateKind kind, int qubit, std::optional<ParamSlot> slot) {
  if (quantum::is_two_qubit(kind))
    throw std::invalid_argument("Circuit::add_gate: use add_cnot for two-qubit gates");
  check_qubit(qubit);
  if (quantum::is_parameterized(kind) != slot.has_value())
    throw std::invalid_argument(std::string("Circuit::add_gate: ") +
                                std::string(quantum::gate_name(kind)) +
                                (slot ? " takes no parameter" : " needs a parameter slot"));
  if (slot) {
    const std::size_t limit =
        slot->role == SlotRole::Feature ? n_feature_slots_ : n_trainable_slots_;
    if (slot->index >= limit)
      throw std::out_of_range("Circuit::add_gate: slot index beyond declared count");
  }
  instructions_.push_back({kind, qubit, -1, slot});
}

void Circuit::add_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target)
    throw std::invalid_argument("Circuit::add_cnot: control equals target");
  instructions_.push_back({GateKind::CNOT, control, target, std::nullopt});
}

Circuit compose(const Circuit &first, const Circuit &second) {
  if (first.n_qubits() != second.n_qubits())
    throw std::invalid_argument("compose: qubit-count mismatch");
  Circuit out(first.n_qubits(), std::max(first.n_feature_slots(), second.n_feature_slots()),
              std::max(first.n_trainable_slots(), second.n_trainable_slots()));
  for (const auto *part : {&first, &second}) {
    for (const auto &ins : part->instructions()) {
      if (ins.kind == GateKind::CNOT)
        out.add_cnot(ins.qubit0, ins.qubit1);
      else
        out.add_gate(ins.kind, ins.qubit0, ins.slot);
    }
  }
  return out;
}

GateCensus gate_census(const Circuit &circuit) {
  GateCensus c;
  for (const auto &ins : circuit.instructions()) {
    if (quantum::is_two_qubit(ins.kind))
      ++c.two_qubit;
    else
      ++c.single_qubit;
  }
  c.total = c.single_qubit + c.two_qubit;
  return c;
}

void apply_circuit(const Circuit &circuit, quantum::StateVector &state,
                   std::span<const double> features, std::span<const double> params) {
  if (state.n_qubits() != circuit.n_qubits())
    throw std::invalid_argument("apply_circuit: state/circuit qubit mismatch");
  if (features.size() != circuit.n_feature_slots())
    throw std::invalid_argument("apply_circuit: expected " +
                                std::to_string(circuit.n_feature_slots()) + " features, got " +
                                std::to_string(features.size()));
  if (params.size() != circuit.n_trainable_slots())
    throw std::invalid_argument("apply_circuit: expected " +
                                std::to_string(circuit.n_trainable_slots()) +
                                " parameters, got " + std::to_string(params.size()));

  for (const auto &ins : circuit.instructions()) {
    double angle = 0.0;
    if (ins.slot) {
      const auto &values = ins.slot->role == SlotRole::Feature ? features : params;
      angle = ins.slot->multiplier * values[ins.slot->index];
      if (!std::isfinite(angle))
        throw std::invalid_argument("apply_circuit: non-finite bound angle");
    }
    switch (ins.kind) {
    case GateKind::H:
      state.apply_hadamard(ins.qubit0);
      break;
    case GateKind::P:
      state.apply_phase(angle, ins.qubit0);
      break;
    case GateKind::RZ:
      state.apply_rz(angle, ins.qubit0);
      break;
    case GateKind::RY:
      state.apply_ry(angle, ins.qubit0);
      break;
    case GateKind::CNOT:
      state.apply_cnot(ins.qubit0, ins.qubit1);
      break;
    }
  }
}

quantum::StateVector evaluate_circuit(const Circuit &circuit, std::span<const double> features,
                                      std::span<const double> params) {
  quantum::StateVector state(circuit.n_qubits());
  apply_circuit(circuit, state, features, params);
  return state;
}

} // namespace qnnbench::circuit
