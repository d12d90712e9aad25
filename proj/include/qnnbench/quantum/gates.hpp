#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace qnnbench::quantum {

using Amplitude = std::complex<double>;

enum class GateKind { H, P, RZ, RY, CNOT };

std::string_view gate_name(GateKind kind);
bool is_two_qubit(GateKind kind);
bool is_parameterized(GateKind kind);

// Row-major gate matrix. `dim` is 2 for single-qubit gates and 4 for CNOT;
// only the leading dim*dim entries are meaningful.
//
// The CNOT matrix is expressed in the basis |control, target> with the
// control as the most significant bit, i.e. the textbook
//   [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]].
struct GateMatrix {
  GateKind kind = GateKind::H;
  double angle = 0.0;
  int dim = 2;
  std::array<Amplitude, 16> entries{};

  Amplitude operator()(int r, int c) const { return entries[r * dim + c]; }
};

// Exact matrices:
//   H      = 1/sqrt2 [[1, 1], [1, -1]]
//   RZ(t)  = diag(e^{-it/2}, e^{it/2})
//   P(t)   = diag(1, e^{it})
//   RY(t)  = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
// Throws std::invalid_argument for a non-finite angle.
GateMatrix gate_matrix(GateKind kind, double angle = 0.0);

} // namespace qnnbench::quantum
