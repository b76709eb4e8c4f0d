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

#ifndef QACNEK_CIRCUIT_H
#define QACNEK_CIRCUIT_H

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qacnek {

using Complex = std::complex<double>;
using Qubit = std::uint32_t;

/// Tolerance used for every structural invariant (unitarity, normalization).
inline constexpr double kStructuralTol = 1e-12;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

Mat2 mat2_identity();
Mat2 mat2_x();
Mat2 mat2_z();
Mat2 mat2_h();
Mat2 mat2_mul(const Mat2 &a, const Mat2 &b);
Mat2 mat2_adjoint(const Mat2 &a);
bool mat2_is_unitary(const Mat2 &m, double tol = kStructuralTol);
bool mat2_approx_equal(const Mat2 &a, const Mat2 &b, double tol);

/// One-qubit state amp0|0> + amp1|1>.
struct LocalState {
    Complex amp0;
    Complex amp1;

    static LocalState zero() { return {1.0, 0.0}; }
    static LocalState one() { return {0.0, 1.0}; }
    static LocalState plus();
    static LocalState minus();
    /// sqrt(w0)|0> + sqrt(1 - w0)|1>.
    static LocalState real_weighted(double w0);

    double norm_sq() const { return std::norm(amp0) + std::norm(amp1); }
    bool is_normalized(double tol = kStructuralTol) const;
    /// |<1|chi>|^2.
    double p_one() const { return std::norm(amp1); }
    /// The orthogonal state (-conj(amp1), conj(amp0)).
    LocalState orthogonal() const { return {-std::conj(amp1), std::conj(amp0)}; }
    LocalState apply(const Mat2 &m) const { return {m[0] * amp0 + m[1] * amp1, m[2] * amp0 + m[3] * amp1}; }

    bool operator==(const LocalState &) const = default;
};

struct OneQubitGate {
    Qubit qubit;
    Mat2 matrix;
    bool operator==(const OneQubitGate &) const = default;
};

/// |x, b> -> |x, b xor AND(x)>.
struct ToffoliGate {
    std::vector<Qubit> controls;
    Qubit target;
    bool operator==(const ToffoliGate &) const = default;
};

/// |x, b> -> |x, b xor OR(x)>.
struct OrGate {
    std::vector<Qubit> controls;
    Qubit target;
    bool operator==(const OrGate &) const = default;
};

struct RTensorFactor {
    Qubit qubit;
    LocalState state;
    bool operator==(const RTensorFactor &) const = default;
};

/// Reflection I - 2|chi><chi| about a tensor product of one-qubit states.
/// Factors are kept sorted by qubit.
struct RTensorGate {
    std::vector<RTensorFactor> factors;
    bool operator==(const RTensorGate &) const = default;
};

/// Restricted-fanout primitive: |b, x> -> |b, x xor b^k>. Only used to express
/// fanout trees with arity above two; a two-qubit fanout is emitted as a CNOT.
struct FanoutGate {
    Qubit source;
    std::vector<Qubit> targets;
    bool operator==(const FanoutGate &) const = default;
};

using Gate = std::variant<OneQubitGate, ToffoliGate, OrGate, RTensorGate, FanoutGate>;

Gate make_one_qubit(Qubit q, const Mat2 &m);
Gate make_x(Qubit q);
Gate make_h(Qubit q);
/// A Toffoli with no controls degenerates to X on the target.
Gate make_toffoli(std::vector<Qubit> controls, Qubit target);
Gate make_cnot(Qubit control, Qubit target);
/// An OR with no controls is the identity on the target.
Gate make_or(std::vector<Qubit> controls, Qubit target);
Gate make_rtensor(std::vector<RTensorFactor> factors);
/// Controlled-Z written as R_{|11>}.
Gate make_cz(Qubit a, Qubit b);
Gate make_fanout(Qubit source, std::vector<Qubit> targets);

/// Qubits acted on, ascending.
std::vector<Qubit> gate_support(const Gate &g);
std::size_t gate_arity(const Gate &g);
inline bool is_multi_qubit(const Gate &g) { return gate_arity(g) >= 2; }
/// Toffoli, OR, fanout, and one-qubit gates equal to I or X.
bool is_classical_gate(const Gate &g, double tol = kStructuralTol);
Gate gate_inverse(const Gate &g);
/// Renames qubit q to mapping[q].
Gate gate_relabel(const Gate &g, const std::vector<Qubit> &mapping);
/// Dense 2x2 matrix of a one-qubit gate (support size one).
Mat2 one_qubit_matrix(const Gate &g);
std::string gate_kind_name(const Gate &g);

struct Layer {
    std::vector<Gate> gates;
    bool operator==(const Layer &) const = default;
    bool has_multi_qubit_gate() const;
    /// Sorts gates by ascending minimum qubit index.
    void canonicalize();
};

struct TopologyEntry {
    std::vector<Qubit> support;
    std::size_t layer_index;
    auto operator<=>(const TopologyEntry &) const = default;
};
using Topology = std::set<TopologyEntry>;

class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Layer> &layers() const { return layers_; }
    const std::optional<std::vector<Qubit>> &targets() const { return targets_; }

    /// Appends a layer, canonicalizing its gate order. Empty layers are dropped.
    Circuit &append_layer(Layer layer);
    Circuit &append_layer(std::vector<Gate> gates) { return append_layer(Layer{std::move(gates)}); }
    /// Appends each layer of `other` (which must not have more qubits).
    Circuit &append_circuit(const Circuit &other);
    Circuit &set_targets(std::optional<std::vector<Qubit>> targets);

    /// Targets if set, otherwise all qubits in order.
    std::vector<Qubit> target_list() const;

    bool operator==(const Circuit &) const = default;

   private:
    std::size_t num_qubits_ = 0;
    std::vector<Layer> layers_;
    std::optional<std::vector<Qubit>> targets_;
};

/// Number of multi-qubit gates.
std::size_t circuit_size(const Circuit &c);
/// Number of layers containing a multi-qubit gate.
std::size_t circuit_depth(const Circuit &c);
/// (support, multi-qubit layer index) pairs of every multi-qubit gate.
Topology circuit_topology(const Circuit &c);
/// Empty iff every structural invariant holds.
std::vector<std::string> validate(const Circuit &c);
/// Reverses layer order and inverts each gate. Targets are kept.
Circuit circuit_inverse(const Circuit &c);
/// Embeds `c` into a larger register, qubit q mapping to mapping[q].
Circuit circuit_relabel(const Circuit &c, std::size_t num_qubits, const std::vector<Qubit> &mapping);

}  // namespace qacnek

#endif
