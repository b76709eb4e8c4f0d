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

// Circuit rewrites and the reductions between parity, fanout, cat state and
// nekomata circuits.

#ifndef QACNEK_TRANSFORMS_H
#define QACNEK_TRANSFORMS_H

#include <Eigen/Dense>

#include "qacnek/circuit.h"

namespace qacnek {

enum class ReferenceKind { kParity, kFanout };

/// Dense U_parity or U_fanout on n qubits (qubit 0 is b); n <= 12.
///   parity: |b, x> -> |b ^ x_1 ^ ... ^ x_{n-1}, x>
///   fanout: |b, x> -> |b, x_1 ^ b, ..., x_{n-1} ^ b>
Eigen::MatrixXcd reference_unitary(ReferenceKind kind, std::size_t n);

/// Replaces every OR gate with X on its controls, a Toffoli, then X on the
/// controls and the target. One-qubit gates land in fresh layers, so the
/// multi-qubit topology is unchanged.
Circuit expand_or(const Circuit &c);

struct RTensorSynthesis {
    Layer local;     // one-qubit gates L with L|1..1,-> = chi up to phase
    Gate toffoli;    // controls = all factor qubits but the last
};

/// L * Toffoli * L^dagger == R_chi. Needs at least one factor; with one
/// factor the Toffoli degenerates to X = R_{|->}.
RTensorSynthesis synthesize_rtensor(const std::vector<RTensorFactor> &factors);

/// The same synthesis unrolled into a three-layer circuit on num_qubits.
Circuit synthesize_rtensor_circuit(std::size_t num_qubits, const std::vector<RTensorFactor> &factors);

/// Rewrites a circuit as one layer of one-qubit gates followed only by
/// multi-qubit R-tensor gates, with identical topology and unitary.
/// Fanout gates are rejected (they are not single reflections).
Circuit to_rtensor_normal_form(const Circuit &c);

/// (H^n x I) c (H^n x I).
Circuit conjugate_by_hadamards(const Circuit &c, std::size_t n);

/// Restricted fanout |b, 0^{n-1}> -> |b^n> by fanout gates of arity <= m;
/// depth ceil(log_m n), size <= n - 1.
Circuit fanout_tree(std::size_t n, std::size_t m);

/// Clean parity from a nekomata constructor C (targets = C's first n qubits).
/// Wires: inputs 0..n-1, C's wires n..n+a-1, parity wire n+a.
Circuit parity_from_nekomata(const Circuit &constructor, std::size_t n);

/// c preceded by H on wire 0.
Circuit cat_from_restricted_fanout(const Circuit &c, std::size_t n);

/// (X^n x I) C: flips the n targets after the constructor runs.
Circuit x_conjugated_constructor(const Circuit &constructor, std::size_t n);

/// Two sides of the open-control simplification on k + 2 qubits (wire 0 is
/// the regular control, wire 1 the ancilla, wires 2.. the open controls).
Circuit fig7_left(std::size_t k);
Circuit fig7_right(std::size_t k);
/// True when both sides agree on every basis input with the ancilla at |0>.
bool fig7_rewrite_check(std::size_t k);

}  // namespace qacnek

#endif
