#include "qnnbench/quantum/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnnbench::quantum {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
  case GateKind::H:
    return "H";
  case GateKind::P:
    return "P";
  case GateKind::RZ:
    return "RZ";
  case GateKind::RY:
    return "RY";
  case GateKind::CNOT:
    return "CX";
  }
  return "?";
}

bool is_two_qubit(GateKind kind) { return kind == GateKind::CNOT; }

bool is_parameterized(GateKind kind) {
  return kind == GateKind::P || kind == GateKind::RZ || kind == GateKind::RY;
}

GateMatrix gate_matrix(GateKind kind, double angle) {
  if (!std::isfinite(angle))
    throw std::invalid_argument("gate_matrix: non-finite angle");

  GateMatrix g;
  g.kind = kind;
  g.angle = is_parameterized(kind) ? angle : 0.0;
  auto &m = g.entries;
  switch (kind) {
  case GateKind::H: {
    const double s = 1.0 / std::numbers::sqrt2;
    m[0] = s;
    m[1] = s;
    m[2] = s;
    m[3] = -s;
    break;
  }
  case GateKind::P:
    m[0] = 1.0;
    m[3] = std::polar(1.0, angle);
    break;
  case GateKind::RZ:
    m[0] = std::polar(1.0, -angle / 2.0);
    m[3] = std::polar(1.0, angle / 2.0);
    break;
  case GateKind::RY: {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    m[0] = c;
    m[1] = -s;
    m[2] = s;
    m[3] = c;
    break;
  }
  case GateKind::CNOT:
    g.dim = 4;
    m[0 * 4 + 0] = 1.0;
    m[1 * 4 + 1] = 1.0;
    m[2 * 4 + 3] = 1.0;
    m[3 * 4 + 2] = 1.0;
    break;
  }
  return g;
}

} // namespace qnnbench::quantum
