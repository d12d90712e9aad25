#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "qnnbench/circuit/circuit.hpp"
#include "qnnbench/circuit/library.hpp"
#include "qnnbench/core/random.hpp"
#include "qnnbench/quantum/state_vector.hpp"

using namespace qnnbench::circuit;
using qnnbench::Rng;
using qnnbench::quantum::GateKind;
using qnnbench::quantum::StateVector;

namespace {

using Pairs = std::vector<QubitPair>;

GateCensus census_of(Entanglement e) {
  return gate_census(compose(build_z_feature_map(4, 2), build_real_amplitudes(4, 2, e)));
}

} // namespace

TEST_CASE("entangler pairs on four qubits") {
  for (int layer : {0, 1, 2}) {
    CHECK(entangler_pairs(Entanglement::Linear, 4, layer) == Pairs{{0, 1}, {1, 2}, {2, 3}});
    CHECK(entangler_pairs(Entanglement::Full, 4, layer) ==
          Pairs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(entangler_pairs(Entanglement::Circular, 4, layer) ==
          Pairs{{3, 0}, {0, 1}, {1, 2}, {2, 3}});
    CHECK(entangler_pairs(Entanglement::ReverseLinear, 4, layer) ==
          Pairs{{2, 3}, {1, 2}, {0, 1}});
    CHECK(entangler_pairs(Entanglement::Pairwise, 4, layer) == Pairs{{0, 1}, {2, 3}, {1, 2}});
  }
  CHECK(entangler_pairs(Entanglement::SCA, 4, 0) == Pairs{{3, 0}, {0, 1}, {1, 2}, {2, 3}});
  CHECK(entangler_pairs(Entanglement::SCA, 4, 1) == Pairs{{3, 2}, {0, 3}, {1, 0}, {2, 1}});
  CHECK(entangler_pairs(Entanglement::Circular, 2, 0) == Pairs{{0, 1}});
}

TEST_CASE("entangler pair properties") {
  for (int n = 2; n <= 7; ++n) {
    for (auto e : kAllEntanglements)
      for (int layer = 0; layer < 4; ++layer) {
        const auto pairs = entangler_pairs(e, n, layer);
        CHECK(pairs == entangler_pairs(e, n, layer));
        for (auto [c, t] : pairs) {
          CHECK(c != t);
          CHECK(c >= 0);
          CHECK(t < n);
        }
      }
    auto lin = entangler_pairs(Entanglement::Linear, n, 0);
    auto rev = entangler_pairs(Entanglement::ReverseLinear, n, 0);
    std::reverse(rev.begin(), rev.end());
    CHECK(lin == rev);
    CHECK(entangler_pairs(Entanglement::Full, n, 0) == entangler_pairs(Entanglement::Full, n, 3));
    CHECK(entangler_pairs(Entanglement::Full, n, 0).size() ==
          static_cast<std::size_t>(n * (n - 1) / 2));
  }
  CHECK_THROWS_AS(entangler_pairs(Entanglement::Linear, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(entangler_pairs(Entanglement::Linear, 4, -1), std::invalid_argument);
}

TEST_CASE("strategy names round trip") {
  for (auto e : kAllEntanglements)
    CHECK(parse_entanglement(to_string(e)) == e);
  CHECK_FALSE(parse_entanglement("ring").has_value());
}

TEST_CASE("feature map") {
  const auto fm = build_z_feature_map(4, 2);
  CHECK(gate_census(fm) == GateCensus{16, 0, 16});
  CHECK(fm.n_feature_slots() == 4);
  CHECK(fm.n_trainable_slots() == 0);
  for (const auto &ins : fm.instructions())
    if (ins.kind == GateKind::P) {
      REQUIRE(ins.slot);
      CHECK(ins.slot->role == SlotRole::Feature);
      CHECK(ins.slot->index == static_cast<std::size_t>(ins.qubit0));
      CHECK(ins.slot->multiplier == 2.0);
    }

  const double zeros[4] = {0, 0, 0, 0};
  const auto s = evaluate_circuit(fm, zeros, {});
  CHECK(std::abs(s[0] - 1.0) < 1e-12);
  for (std::size_t i = 1; i < 16; ++i)
    CHECK(std::abs(s[i]) < 1e-12);

  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(-3.0, 3.0);
    const auto one = evaluate_circuit(build_z_feature_map(1, 1), std::span(&x, 1), {});
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(one[0] - r) < 1e-12);
    CHECK(std::abs(one[1] - r * std::polar(1.0, 2.0 * x)) < 1e-12);
  }

  CHECK(gate_census(build_z_feature_map(4, 2, FeatureRotation::RZ)) == GateCensus{16, 0, 16});
  // RZ differs from P by a global phase per gate
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x(4), theta(12);
    for (auto &v : x)
      v = rng.uniform(-1.0, 2.0);
    for (auto &v : theta)
      v = rng.uniform(0.0, 6.0);
    const auto ansatz = build_real_amplitudes(4, 2, Entanglement::Linear);
    const auto p = evaluate_circuit(compose(build_z_feature_map(4, 2), ansatz), x, theta);
    const auto z = evaluate_circuit(
        compose(build_z_feature_map(4, 2, FeatureRotation::RZ), ansatz), x, theta);
    CHECK(std::abs(qnnbench::quantum::expectation(p) - qnnbench::quantum::expectation(z)) < 1e-12);
  }
  CHECK_THROWS_AS(build_z_feature_map(4, 0), std::invalid_argument);
}

TEST_CASE("real amplitudes ansatz") {
  const auto full = build_real_amplitudes(4, 2, Entanglement::Full);
  CHECK(gate_census(full) == GateCensus{12, 12, 24});
  CHECK(full.n_trainable_slots() == 12);
  CHECK(gate_census(build_real_amplitudes(4, 2, Entanglement::Pairwise)).two_qubit == 6);

  std::set<std::size_t> used;
  for (const auto &ins : full.instructions())
    if (ins.kind == GateKind::RY) {
      REQUIRE(ins.slot);
      CHECK(ins.slot->role == SlotRole::Trainable);
      CHECK(ins.slot->index % 4 == static_cast<std::size_t>(ins.qubit0));
      used.insert(ins.slot->index);
    }
  CHECK(used.size() == 12);

  const std::vector<double> zero(12, 0.0);
  for (auto e : kAllEntanglements) {
    const auto s = evaluate_circuit(build_real_amplitudes(4, 2, e), {}, zero);
    CHECK(std::abs(s[0] - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(build_real_amplitudes(4, 0, Entanglement::Full), std::invalid_argument);
  CHECK_THROWS_AS(build_real_amplitudes(1, 2, Entanglement::Full), std::invalid_argument);
}

TEST_CASE("gate census per configuration") {
  CHECK(census_of(Entanglement::Full) == GateCensus{28, 12, 40});
  CHECK(census_of(Entanglement::Linear) == GateCensus{28, 6, 34});
  CHECK(census_of(Entanglement::Circular) == GateCensus{28, 8, 36});
  CHECK(census_of(Entanglement::SCA) == GateCensus{28, 8, 36});
  CHECK(census_of(Entanglement::ReverseLinear) == GateCensus{28, 6, 34});
  CHECK(census_of(Entanglement::Pairwise) == GateCensus{28, 6, 34});
  CHECK(gate_census(Circuit(3)) == GateCensus{0, 0, 0});
}

TEST_CASE("compose") {
  const auto fm = build_z_feature_map(4, 2);
  const auto joined = compose(fm, Circuit(4));
  CHECK(gate_census(joined) == gate_census(fm));
  CHECK(joined.instructions() == fm.instructions());
  CHECK_THROWS_AS(compose(fm, Circuit(3)), std::invalid_argument);

  const auto qnn = compose(fm, build_real_amplitudes(4, 2, Entanglement::Full));
  CHECK(qnn.n_feature_slots() == 4);
  CHECK(qnn.n_trainable_slots() == 12);
  const std::vector<double> x(4, 0.0), p(12, 0.0);
  const auto s = evaluate_circuit(qnn, x, p);
  CHECK(std::abs(s[0] - 1.0) < 1e-12);
  CHECK(std::abs(qnnbench::quantum::expectation(s) - 1.0) < 1e-12);
}

TEST_CASE("binding against the dense oracle") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    // 3-qubit toy mixing feature and trainable slots
    Circuit c(3, 2, 3);
    c.add_gate(GateKind::H, 0);
    c.add_gate(GateKind::P, 0, ParamSlot{SlotRole::Feature, 0, 2.0});
    c.add_gate(GateKind::RY, 1, ParamSlot{SlotRole::Trainable, 0, 1.0});
    c.add_cnot(0, 2);
    c.add_gate(GateKind::RZ, 2, ParamSlot{SlotRole::Feature, 1, -0.5});
    c.add_cnot(2, 1);
    c.add_gate(GateKind::RY, 0, ParamSlot{SlotRole::Trainable, 1, 1.0});
    c.add_gate(GateKind::RY, 2, ParamSlot{SlotRole::Trainable, 2, 3.0});
    c.add_cnot(1, 0);
    const std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const std::vector<double> p{rng.uniform(0, 6.3), rng.uniform(0, 6.3), rng.uniform(0, 6.3)};
    const auto s = evaluate_circuit(c, x, p);
    const auto v = oracle::circuit_state(c, x, p);
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
    for (std::size_t i = 0; i < s.size(); ++i)
      CHECK(std::abs(s[i] - v(static_cast<Eigen::Index>(i))) < 1e-10);
  }
}

TEST_CASE("binding validation") {
  const auto fm = build_z_feature_map(4, 2);
  const std::vector<double> three(3, 0.0), four(4, 0.0);
  CHECK_THROWS_AS(evaluate_circuit(fm, three, {}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_circuit(fm, four, four), std::invalid_argument);
  const std::vector<double> bad{0.0, std::nan(""), 0.0, 0.0};
  CHECK_THROWS_AS(evaluate_circuit(fm, bad, {}), std::invalid_argument);

  Circuit c(2, 1, 1);
  CHECK_THROWS_AS(c.add_gate(GateKind::RY, 0), std::invalid_argument);
  CHECK_THROWS_AS(c.add_gate(GateKind::RY, 0, ParamSlot{SlotRole::Trainable, 1, 1.0}),
                  std::out_of_range);
  CHECK_THROWS_AS(c.add_gate(GateKind::H, 0, ParamSlot{SlotRole::Trainable, 0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(c.add_gate(GateKind::H, 2), std::out_of_range);
  CHECK_THROWS_AS(c.add_cnot(1, 1), std::invalid_argument);
}

TEST_CASE("render format") {
  Circuit c(2, 1, 1);
  c.add_gate(GateKind::H, 0);
  c.add_gate(GateKind::P, 0, ParamSlot{SlotRole::Feature, 0, 2.0});
  c.add_gate(GateKind::RY, 1, ParamSlot{SlotRole::Trainable, 0, 1.0});
  c.add_cnot(0, 1);
  CHECK(render(c) == "circuit qubits=2 features=1 trainable=1\n"
                     "H 0\n"
                     "P 0 x[0]*2\n"
                     "RY 1 theta[0]\n"
                     "CX 0 1\n");
}
