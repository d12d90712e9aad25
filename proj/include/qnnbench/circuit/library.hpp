#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnnbench/circuit/circuit.hpp"

namespace qnnbench::circuit {

enum class Entanglement { Full, Linear, Circular, SCA, ReverseLinear, Pairwise };

inline constexpr Entanglement kAllEntanglements[] = {
    Entanglement::Full, Entanglement::Linear,        Entanglement::Circular,
    Entanglement::SCA,  Entanglement::ReverseLinear, Entanglement::Pairwise};

std::string_view to_string(Entanglement strategy);
// Accepts the names produced by to_string ("full", "reverse_linear", ...).
std::optional<Entanglement> parse_entanglement(std::string_view name);

using QubitPair = std::pair<int, int>; // (control, target)

// CNOT pairs for one entangling layer, in application order:
//   Full          every (i, j) with i < j, row-major
//   Linear        (0,1), (1,2), ..., (n-2,n-1)
//   ReverseLinear Linear reversed
//   Circular      (n-1,0) followed by Linear (no wrap pair when n == 2)
//   SCA           Circular rotated right by `layer` positions; pairs are
//                 flipped to (target, control) on odd layers
//   Pairwise      even-offset Linear pairs, then odd-offset ones
// Throws std::invalid_argument if n_qubits < 2 or layer < 0.
std::vector<QubitPair> entangler_pairs(Entanglement strategy, int n_qubits, int layer);

// Which single-qubit Z rotation encodes the features. P and RZ differ by a
// global phase only.
enum class FeatureRotation { Phase, RZ };

// Per repetition: H on every qubit, then a Z rotation of angle 2*x_j on qubit j.
Circuit build_z_feature_map(int n_qubits, int reps,
                            FeatureRotation rotation = FeatureRotation::Phase);

// reps+1 RY layers with trainable angles, interleaved with reps entangling
// layers. Parameter k = layer * n_qubits + qubit.
Circuit build_real_amplitudes(int n_qubits, int reps, Entanglement strategy);

// One instruction per line; see README for the format.
std::string render(const Circuit &circuit);

} // namespace qnnbench::circuit
