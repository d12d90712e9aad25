#include "qnnbench/quantum/state_vector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qnnbench::quantum {

namespace {

// Visit every (i0, i1) index pair that differs only in bit `qubit`, with i0
// having the bit cleared.
template <typename Fn>
inline void for_each_pair(std::size_t size, int qubit, Fn &&fn) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t block = 0; block < size; block += 2 * stride) {
    for (std::size_t i0 = block; i0 < block + stride; ++i0)
      fn(i0, i0 + stride);
  }
}

} // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("StateVector: qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<Amplitude> amps) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("StateVector: qubit count out of range");
  if (amps.size() != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("StateVector: amplitude count must be 2^n");
  StateVector s;
  s.n_qubits_ = n_qubits;
  s.amps_ = std::move(amps);
  return s;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto &a : amps_)
    total += std::norm(a);
  return total;
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_)
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(n_qubits_) +
                            "-qubit state");
}

void StateVector::apply_single_qubit(const GateMatrix &gate, int qubit) {
  if (gate.dim != 2)
    throw std::invalid_argument("apply_single_qubit: gate is not 2x2");
  check_qubit(qubit);
  const Amplitude m00 = gate(0, 0), m01 = gate(0, 1);
  const Amplitude m10 = gate(1, 0), m11 = gate(1, 1);
  for_each_pair(amps_.size(), qubit, [&](std::size_t i0, std::size_t i1) {
    const Amplitude a0 = amps_[i0];
    const Amplitude a1 = amps_[i1];
    amps_[i0] = m00 * a0 + m01 * a1;
    amps_[i1] = m10 * a0 + m11 * a1;
  });
}

void StateVector::apply_ry(double angle, int qubit) {
  check_qubit(qubit);
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  for_each_pair(amps_.size(), qubit, [&](std::size_t i0, std::size_t i1) {
    const Amplitude a0 = amps_[i0];
    const Amplitude a1 = amps_[i1];
    amps_[i0] = c * a0 - s * a1;
    amps_[i1] = s * a0 + c * a1;
  });
}

void StateVector::apply_phase(double angle, int qubit) {
  check_qubit(qubit);
  const Amplitude phase = std::polar(1.0, angle);
  for_each_pair(amps_.size(), qubit,
                [&](std::size_t, std::size_t i1) { amps_[i1] *= phase; });
}

void StateVector::apply_rz(double angle, int qubit) {
  check_qubit(qubit);
  const Amplitude lo = std::polar(1.0, -angle / 2.0);
  const Amplitude hi = std::polar(1.0, angle / 2.0);
  for_each_pair(amps_.size(), qubit, [&](std::size_t i0, std::size_t i1) {
    amps_[i0] *= lo;
    amps_[i1] *= hi;
  });
}

void StateVector::apply_hadamard(int qubit) {
  check_qubit(qubit);
  const double s = 1.0 / std::numbers::sqrt2;
  for_each_pair(amps_.size(), qubit, [&](std::size_t i0, std::size_t i1) {
    const Amplitude a0 = amps_[i0];
    const Amplitude a1 = amps_[i1];
    amps_[i0] = s * (a0 + a1);
    amps_[i1] = s * (a0 - a1);
  });
}

void StateVector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target)
    throw std::invalid_argument("apply_cnot: control and target coincide");
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    // Swap each (control=1, target=0) amplitude with its target-flipped partner.
    if ((i & cmask) && !(i & tmask))
      std::swap(amps_[i], amps_[i | tmask]);
  }
}

void StateVector::apply(const GateMatrix &gate, int qubit0, int qubit1) {
  if (gate.kind == GateKind::CNOT)
    apply_cnot(qubit0, qubit1);
  else
    apply_single_qubit(gate, qubit0);
}

double expectation(const StateVector &state, Observable observable) {
  switch (observable) {
  case Observable::ParityZ: {
    double total = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t b = 0; b < amps.size(); ++b) {
      const double p = std::norm(amps[b]);
      total += (std::popcount(b) & 1) ? -p : p;
    }
    return total;
  }
  }
  return 0.0;
}

} // namespace qnnbench::quantum
