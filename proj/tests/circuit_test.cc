// Copyright 2026 The qacnek Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>

#include "qacnek/circuit.h"
#include "qacnek/circuit_json.h"
#include "qacnek/nekomata.h"
#include "qacnek/transforms.h"
#include "test_util.h"

namespace qacnek {
namespace {

// Parity of 4 qubits onto qubit 0 as three sequential CNOTs.
Circuit fig1_parity() {
    Circuit c(4);
    c.append_layer({make_cnot(1, 0)});
    c.append_layer({make_cnot(2, 0)});
    c.append_layer({make_cnot(3, 0)});
    return c;
}

bool has_problem(const Circuit &c, const std::string &needle) {
    for (const auto &p : validate(c)) {
        if (p.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

TEST(CircuitMetrics, Fig1ParitySizeDepthTopology) {
    const Circuit c = fig1_parity();
    EXPECT_EQ(circuit_size(c), 3u);
    EXPECT_EQ(circuit_depth(c), 3u);
    const Topology want{{{0, 1}, 0}, {{0, 2}, 1}, {{0, 3}, 2}};
    EXPECT_EQ(circuit_topology(c), want);
}

TEST(CircuitMetrics, OneQubitOnlyHasZeroSizeAndDepth) {
    Circuit c(3);
    c.append_layer({make_h(0), make_x(2)});
    c.append_layer({make_h(1)});
    EXPECT_EQ(circuit_size(c), 0u);
    EXPECT_EQ(circuit_depth(c), 0u);
    EXPECT_TRUE(circuit_topology(c).empty());
}

TEST(CircuitMetrics, EmptyCircuit) {
    const Circuit c(2);
    EXPECT_EQ(circuit_depth(c), 0u);
    EXPECT_EQ(circuit_size(c), 0u);
}

TEST(CircuitMetrics, FanoutTreeFourTwo) {
    const Circuit c = fanout_tree(4, 2);
    EXPECT_EQ(circuit_depth(c), 2u);
    EXPECT_EQ(circuit_size(c), 3u);
}

TEST(CircuitMetrics, Depth2NekomataGateCounts) {
    const Circuit c = build_depth2_nekomata(2, 3, solve_delta(2, 3));
    // 3 column reflections, then 2 row ORs.
    ASSERT_EQ(c.layers().size(), 2u);
    EXPECT_EQ(c.layers()[0].gates.size(), 3u);
    EXPECT_EQ(c.layers()[1].gates.size(), 2u);
    EXPECT_EQ(circuit_size(c), 5u);
    EXPECT_EQ(c.num_qubits(), 8u);
}

TEST(CircuitMetrics, DisjointGatesShareLayerIndex) {
    Circuit c(4);
    c.append_layer({make_cnot(0, 1), make_cnot(2, 3)});
    const Topology want{{{0, 1}, 0}, {{2, 3}, 0}};
    EXPECT_EQ(circuit_topology(c), want);
}

TEST(CircuitValidate, WellFormed) { EXPECT_TRUE(validate(fig1_parity()).empty()); }

TEST(CircuitValidate, OverlappingSupports) {
    Circuit c(5);
    c.append_layer({make_cnot(3, 0), make_cnot(3, 1)});
    EXPECT_TRUE(has_problem(c, "overlapping supports"));
}

TEST(CircuitValidate, NonNormalizedLocalState) {
    Circuit c(2);
    c.append_layer({make_rtensor({{0, LocalState{1.0, 1.0}}, {1, LocalState::one()}})});
    EXPECT_TRUE(has_problem(c, "non-normalized local state"));
}

TEST(CircuitValidate, OutOfRangeAndRepeated) {
    Circuit c(2);
    c.append_layer({make_toffoli({0, 0}, 1)});
    EXPECT_TRUE(has_problem(c, "repeated qubit"));
    Circuit d(2);
    d.append_layer({make_cnot(0, 5)});
    EXPECT_TRUE(has_problem(d, "out of range"));
}

TEST(CircuitValidate, NonUnitaryOneQubit) {
    Circuit c(1);
    c.append_layer({make_one_qubit(0, Mat2{2.0, 0.0, 0.0, 1.0})});
    EXPECT_TRUE(has_problem(c, "non-unitary"));
}

TEST(CircuitIr, DegenerateFactories) {
    EXPECT_TRUE(std::holds_alternative<OneQubitGate>(make_toffoli({}, 2)));
    EXPECT_TRUE(std::holds_alternative<OneQubitGate>(make_or({}, 2)));
    EXPECT_TRUE(is_classical_gate(make_or({}, 2)));
    EXPECT_TRUE(is_classical_gate(make_x(0)));
    EXPECT_FALSE(is_classical_gate(make_h(0)));
    EXPECT_EQ(gate_arity(make_fanout(0, {1, 2, 3})), 4u);
}

TEST(CircuitIr, InverseUndoesOneQubitGates) {
    Rng rng(3);
    const Mat2 u = testing::random_unitary(rng);
    const Gate g = make_one_qubit(0, u);
    const Mat2 prod = mat2_mul(one_qubit_matrix(gate_inverse(g)), u);
    EXPECT_TRUE(mat2_approx_equal(prod, mat2_identity(), 1e-12));
}

TEST(CircuitIr, RelabelMovesSupport) {
    Circuit c(2);
    c.append_layer({make_cnot(0, 1)});
    const Circuit r = circuit_relabel(c, 5, {4, 2});
    const Topology want{{{2, 4}, 0}};
    EXPECT_EQ(circuit_topology(r), want);
    EXPECT_EQ(r.num_qubits(), 5u);
}

TEST(CircuitJson, RoundTripFig1) {
    Circuit c = fig1_parity();
    c.set_targets(std::vector<Qubit>{0, 1, 2, 3});
    EXPECT_EQ(deserialize_circuit(serialize_circuit(c)), c);
}

TEST(CircuitJson, RoundTripRandomCircuits) {
    Rng rng(11);
    for (int i = 0; i < 50; i++) {
        Circuit c = testing::random_qac_circuit(6, 3, rng);
        Layer fan;
        fan.gates.push_back(make_fanout(0, {1, 2, 3}));
        c.append_layer(std::move(fan));
        const Circuit back = deserialize_circuit(serialize_circuit(c));
        EXPECT_EQ(back, c);  // 17 digits round-trip doubles exactly
    }
}

TEST(CircuitJson, UnknownGateKind) {
    const char *text = R"({"num_qubits": 2, "targets": null, "layers": [[{"kind": "swap", "qubits": [0, 1]}]]})";
    EXPECT_THROW(deserialize_circuit(text), ParseError);
}

TEST(CircuitJson, SyntaxErrorHasPosition) {
    try {
        deserialize_circuit("{\"num_qubits\": 2,\n  \"layers\": [}");
        FAIL() << "no throw";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_GT(e.column(), 0u);
    }
}

TEST(CircuitJson, SeventeenDigitAmplitudes) {
    const double h = std::sqrt(0.5);
    Circuit c(1);
    c.append_layer({make_rtensor({{0, LocalState{h, h}}})});
    const std::string text = serialize_circuit(c);
    char want[64];
    std::snprintf(want, sizeof want, "%.17g", h);
    EXPECT_NE(text.find(want), std::string::npos) << text;
    // The correctly rounded 17-digit form of 2^{-1/2} is ...757, not ...752.
    EXPECT_EQ(std::string(want), "0.70710678118654757");
    EXPECT_EQ(std::strtod(want, nullptr), h);
}

TEST(CircuitJson, NegativeZeroPrintsAsZero) { EXPECT_EQ(format_real(-0.0), "0"); }

}  // namespace
}  // namespace qacnek
