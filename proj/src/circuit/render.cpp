#include <charconv>
#include <sstream>

#include "qnnbench/circuit/library.hpp"

namespace qnnbench::circuit {

namespace {

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace

// Format:
//   circuit qubits=<n> features=<f> trainable=<t>
//   <GATE> <qubit> [x[<j>]*<m> | theta[<k>]*<m>]    single-qubit gate
//   CX <control> <target>                             CNOT
// The "*<m>" suffix is omitted when the multiplier is 1.
std::string render(const Circuit &circuit) {
  std::ostringstream out;
  out << "circuit qubits=" << circuit.n_qubits() << " features=" << circuit.n_feature_slots()
      << " trainable=" << circuit.n_trainable_slots() << '\n';
  for (const auto &ins : circuit.instructions()) {
    out << quantum::gate_name(ins.kind) << ' ' << ins.qubit0;
    if (ins.qubit1 >= 0)
      out << ' ' << ins.qubit1;
    if (ins.slot) {
      out << ' ' << (ins.slot->role == SlotRole::Feature ? "x[" : "theta[") << ins.slot->index
          << ']';
      if (ins.slot->multiplier != 1.0)
        out << '*' << shortest(ins.slot->multiplier);
    }
    out << '\n';
  }
  return out.str();
}

} // namespace qnnbench::circuit
