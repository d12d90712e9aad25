#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qnnbench/quantum/gates.hpp"

namespace qnnbench::quantum {

inline constexpr int kMaxQubits = 24;

// Dense n-qubit state. Little-endian: qubit q is bit q of the basis index,
// so |q1 q0> = |10> is index 2.
//
// Gate application mutates in place; a StateVector must not be shared
// between threads while it is being updated.
class StateVector {
public:
  // |0...0>. Throws std::invalid_argument unless 1 <= n_qubits <= kMaxQubits.
  explicit StateVector(int n_qubits);

  // Takes ownership of explicit amplitudes; length must be 2^n_qubits.
  // The amplitudes are not renormalised.
  static StateVector from_amplitudes(int n_qubits, std::vector<Amplitude> amps);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  Amplitude operator[](std::size_t index) const { return amps_[index]; }

  double norm_squared() const;

  // Apply a 2x2 unitary to one qubit. Throws std::out_of_range for a bad
  // qubit and std::invalid_argument for a 4x4 gate.
  void apply_single_qubit(const GateMatrix &gate, int qubit);

  // Rotation fast paths used by circuit evaluation. Same semantics as
  // apply_single_qubit(gate_matrix(kind, angle), qubit).
  void apply_ry(double angle, int qubit);
  void apply_phase(double angle, int qubit);
  void apply_rz(double angle, int qubit);
  void apply_hadamard(int qubit);

  // Flip the target bit of every basis state whose control bit is set.
  // Throws std::invalid_argument when control == target and
  // std::out_of_range for a bad index.
  void apply_cnot(int control, int target);

  // Dispatch on gate kind: single-qubit gates act on `qubit0`; CNOT uses
  // qubit0 as control and qubit1 as target.
  void apply(const GateMatrix &gate, int qubit0, int qubit1 = -1);

private:
  StateVector() = default;
  void check_qubit(int qubit) const;

  int n_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

enum class Observable { ParityZ };

// <psi|O|psi>. For ParityZ this is sum_b (-1)^{popcount(b)} |amp_b|^2.
double expectation(const StateVector &state, Observable observable = Observable::ParityZ);

} // namespace qnnbench::quantum
