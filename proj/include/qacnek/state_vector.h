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

#ifndef QACNEK_STATE_VECTOR_H
#define QACNEK_STATE_VECTOR_H

#include <Eigen/Dense>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qacnek/circuit.h"
#include "qacnek/rng.h"

namespace qacnek {

inline constexpr double kNormTol = 1e-10;

/// Dense amplitudes over 2^n basis states; qubit 0 is the most significant bit.
class StateVector {
   public:
    static constexpr std::size_t kMaxQubits = 24;

    /// |0...0> on n qubits.
    explicit StateVector(std::size_t num_qubits);
    /// Takes ownership of amplitudes; throws unless the length is 2^n and the
    /// norm is 1 within kNormTol.
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t num_qubits, std::uint64_t index);
    /// Basis state from a bitstring such as "0110" (character k is qubit k).
    static StateVector from_bits(const std::string &bits);
    static StateVector product(const std::vector<LocalState> &factors);
    /// Haar-ish random state (normalized complex Gaussian vector).
    static StateVector random(std::size_t num_qubits, Rng &rng);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Complex> &amplitudes() const { return amps_; }
    Complex amplitude(std::uint64_t index) const { return amps_[index]; }
    std::span<Complex> mutable_amplitudes() { return amps_; }

   private:
    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

void check_qubit_count(std::size_t num_qubits);

StateVector apply_gate(StateVector s, const Gate &g);
/// Applies every layer in order; throws on qubit-count mismatch.
StateVector run(const Circuit &c, StateVector input);
/// Same, through the serial reference kernels.
StateVector run_serial(const Circuit &c, StateVector input);

/// Dense unitary of a circuit (column j = image of basis state j); n <= 12.
Eigen::MatrixXcd unitary_matrix(const Circuit &c);

Complex inner_product(const StateVector &a, const StateVector &b);
double fidelity(const StateVector &a, const StateVector &b);
/// 1 - ||a - b||^2; never exceeds fidelity(a, b).
double phase_dependent_fidelity(const StateVector &a, const StateVector &b);

struct MeasurementDistribution {
    std::vector<Qubit> qubits;
    /// probs[k]: outcome whose bit for qubits[0] is the most significant.
    std::vector<double> probs;

    double prob(const std::string &bits) const;
    std::map<std::string, double> as_map(double drop_below = 0.0) const;
};

std::string outcome_bits(std::uint64_t outcome, std::size_t width);

MeasurementDistribution measurement_distribution(const StateVector &s, const std::vector<Qubit> &qubits);

struct MeasurementBranch {
    double probability = 0.0;
    std::optional<StateVector> state;  // empty when probability is 0
};

/// Branch 0 projects `qubit` onto basis_state, branch 1 onto
/// basis_state.orthogonal(). Collapsed states are renormalized.
std::array<MeasurementBranch, 2> measure_in_basis(const StateVector &s, Qubit qubit, const LocalState &basis_state);

struct NekomataReport {
    double p_zeros = 0.0;
    double q_ones = 0.0;
    double fidelity = 0.0;
};

/// Maximum fidelity of s with any nekomata on `targets`: ((sqrt p + sqrt q)/sqrt 2)^2.
NekomataReport best_nekomata_fidelity(const StateVector &s, const std::vector<Qubit> &targets);

/// Cat state on n qubits.
StateVector cat_state(std::size_t n);

/// {"num_qubits": n, "amplitudes": [[re, im], ...]}
std::string state_to_json(const StateVector &s);
StateVector state_from_json(const std::string &text);

}  // namespace qacnek

#endif
