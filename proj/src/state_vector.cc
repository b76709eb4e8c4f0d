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

#include "qacnek/state_vector.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qacnek/circuit_json.h"
#include "qacnek/kernels.h"

namespace qacnek {

using kernels::Index;

void check_qubit_count(std::size_t n) {
    if (n == 0 || n > StateVector::kMaxQubits) {
        throw std::invalid_argument("state vector needs 1.." + std::to_string(StateVector::kMaxQubits) +
                                    " qubits, got " + std::to_string(n));
    }
}

StateVector::StateVector(std::size_t n) : num_qubits_(n) {
    check_qubit_count(n);
    amps_.assign(Index{1} << n, Complex{0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n, std::vector<Complex> amplitudes) : num_qubits_(n), amps_(std::move(amplitudes)) {
    check_qubit_count(n);
    if (amps_.size() != (Index{1} << n)) {
        throw std::invalid_argument("amplitude vector length does not match 2^num_qubits");
    }
    const double ns = kernels::serial::norm_sq(amps_);
    if (std::abs(ns - 1.0) > kNormTol) {
        throw std::invalid_argument("state vector is not normalized (norm^2 = " + format_real(ns) + ")");
    }
}

StateVector StateVector::basis(std::size_t n, std::uint64_t index) {
    StateVector s(n);
    if (index >= s.dimension()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_bits(const std::string &bits) {
    std::uint64_t idx = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("bitstring must contain only 0 and 1");
        }
        idx = (idx << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return basis(bits.size(), idx);
}

StateVector StateVector::product(const std::vector<LocalState> &factors) {
    StateVector s(factors.size());
    const std::size_t n = factors.size();
    for (Index i = 0; i < s.dimension(); i++) {
        Complex a = 1.0;
        for (std::size_t q = 0; q < n; q++) {
            a *= ((i >> (n - 1 - q)) & 1) ? factors[q].amp1 : factors[q].amp0;
        }
        s.amps_[i] = a;
    }
    const double ns = kernels::serial::norm_sq(s.amps_);
    if (std::abs(ns - 1.0) > kNormTol) {
        throw std::invalid_argument("product of non-normalized local states");
    }
    return s;
}

StateVector StateVector::random(std::size_t n, Rng &rng) {
    check_qubit_count(n);
    std::vector<Complex> v(Index{1} << n);
    for (auto &z : v) {
        const double re = rng.normal();
        z = {re, rng.normal()};
    }
    const double scale = 1.0 / std::sqrt(kernels::serial::norm_sq(v));
    for (auto &z : v) {
        z *= scale;
    }
    return StateVector(n, std::move(v));
}

StateVector apply_gate(StateVector s, const Gate &g) {
    kernels::apply_gate(s.mutable_amplitudes(), s.num_qubits(), g);
    return s;
}

namespace {

StateVector run_impl(const Circuit &c, StateVector s, bool serial) {
    if (c.num_qubits() != s.num_qubits()) {
        throw std::invalid_argument("run: circuit has " + std::to_string(c.num_qubits()) + " qubits, state has " +
                                    std::to_string(s.num_qubits()));
    }
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer.gates) {
            kernels::apply_gate(s.mutable_amplitudes(), s.num_qubits(), g, serial);
        }
    }
    return s;
}

void check_same_dim(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("state dimension mismatch");
    }
}

}  // namespace

StateVector run(const Circuit &c, StateVector input) { return run_impl(c, std::move(input), false); }

StateVector run_serial(const Circuit &c, StateVector input) { return run_impl(c, std::move(input), true); }

Eigen::MatrixXcd unitary_matrix(const Circuit &c) {
    const std::size_t n = c.num_qubits();
    if (n > 12) {
        throw std::invalid_argument("unitary_matrix: at most 12 qubits");
    }
    const Index dim = Index{1} << n;
    Eigen::MatrixXcd u(dim, dim);
    for (Index j = 0; j < dim; j++) {
        const StateVector out = run(c, StateVector::basis(n, j));
        for (Index i = 0; i < dim; i++) {
            u(i, j) = out.amplitude(i);
        }
    }
    return u;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    check_same_dim(a, b);
    return kernels::parallel::inner_product(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::min(1.0, std::norm(inner_product(a, b)));
}

double phase_dependent_fidelity(const StateVector &a, const StateVector &b) {
    check_same_dim(a, b);
    // ||a - b||^2 = 2 - 2 Re<a|b> for unit vectors.
    std::vector<Complex> diff(a.dimension());
    for (Index i = 0; i < diff.size(); i++) {
        diff[i] = a.amplitude(i) - b.amplitude(i);
    }
    return 1.0 - kernels::parallel::norm_sq(diff);
}

std::string outcome_bits(std::uint64_t outcome, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t k = 0; k < width; k++) {
        if ((outcome >> (width - 1 - k)) & 1) {
            s[k] = '1';
        }
    }
    return s;
}

double MeasurementDistribution::prob(const std::string &bits) const {
    if (bits.size() != qubits.size()) {
        throw std::invalid_argument("outcome width does not match measured qubits");
    }
    std::uint64_t idx = 0;
    for (char ch : bits) {
        idx = (idx << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return probs[idx];
}

std::map<std::string, double> MeasurementDistribution::as_map(double drop_below) const {
    std::map<std::string, double> out;
    for (std::uint64_t k = 0; k < probs.size(); k++) {
        if (probs[k] > drop_below) {
            out[outcome_bits(k, qubits.size())] = probs[k];
        }
    }
    return out;
}

MeasurementDistribution measurement_distribution(const StateVector &s, const std::vector<Qubit> &qubits) {
    const std::size_t n = s.num_qubits();
    std::vector<bool> seen(n, false);
    for (Qubit q : qubits) {
        if (q >= n) {
            throw std::out_of_range("measurement qubit " + std::to_string(q) + " out of range");
        }
        if (seen[q]) {
            throw std::invalid_argument("measured qubits must be distinct");
        }
        seen[q] = true;
    }
    if (qubits.size() > 30) {
        throw std::invalid_argument("too many measured qubits");
    }
    MeasurementDistribution d;
    d.qubits = qubits;
    d.probs.assign(std::uint64_t{1} << qubits.size(), 0.0);
    const std::size_t k = qubits.size();
    for (Index i = 0; i < s.dimension(); i++) {
        std::uint64_t o = 0;
        for (std::size_t j = 0; j < k; j++) {
            o |= ((i >> (n - 1 - qubits[j])) & 1) << (k - 1 - j);
        }
        d.probs[o] += std::norm(s.amplitude(i));
    }
    for (double &p : d.probs) {
        if (p < 0.0 && p >= -1e-12) {
            p = 0.0;
        }
    }
    return d;
}

std::array<MeasurementBranch, 2> measure_in_basis(const StateVector &s, Qubit qubit, const LocalState &basis_state) {
    const std::size_t n = s.num_qubits();
    if (qubit >= n) {
        throw std::out_of_range("measure_in_basis: qubit out of range");
    }
    const Index mask = kernels::qubit_mask(n, qubit);
    std::array<MeasurementBranch, 2> out;
    const LocalState bases[2] = {basis_state, basis_state.orthogonal()};
    for (int b = 0; b < 2; b++) {
        const LocalState &e = bases[b];
        std::vector<Complex> v(s.dimension(), Complex{0.0});
        double prob = 0.0;
        for (Index i = 0; i < s.dimension(); i++) {
            if (i & mask) {
                continue;
            }
            const Complex c = std::conj(e.amp0) * s.amplitude(i) + std::conj(e.amp1) * s.amplitude(i | mask);
            v[i] = e.amp0 * c;
            v[i | mask] = e.amp1 * c;
            prob += std::norm(c);
        }
        out[b].probability = prob;
        if (prob > 1e-15) {
            const double scale = 1.0 / std::sqrt(prob);
            for (auto &z : v) {
                z *= scale;
            }
            // Renormalize exactly to keep the constructor's check robust.
            const double ns = kernels::serial::norm_sq(v);
            const double fix = 1.0 / std::sqrt(ns);
            for (auto &z : v) {
                z *= fix;
            }
            out[b].state.emplace(n, std::move(v));
        } else {
            out[b].probability = 0.0;
        }
    }
    return out;
}

NekomataReport best_nekomata_fidelity(const StateVector &s, const std::vector<Qubit> &targets) {
    if (targets.empty()) {
        throw std::invalid_argument("best_nekomata_fidelity: need at least one target");
    }
    const auto d = measurement_distribution(s, targets);
    NekomataReport r;
    r.p_zeros = d.probs.front();
    r.q_ones = d.probs.back();
    const double amp = (std::sqrt(r.p_zeros) + std::sqrt(r.q_ones)) / std::sqrt(2.0);
    r.fidelity = std::min(1.0, amp * amp);
    return r;
}

StateVector cat_state(std::size_t n) {
    check_qubit_count(n);
    std::vector<Complex> v(Index{1} << n, Complex{0.0});
    v.front() = 1.0 / std::sqrt(2.0);
    v.back() = 1.0 / std::sqrt(2.0);
    return StateVector(n, std::move(v));
}

std::string state_to_json(const StateVector &s) {
    std::ostringstream out;
    out << "{\"num_qubits\": " << s.num_qubits() << ", \"amplitudes\": [";
    for (Index i = 0; i < s.dimension(); i++) {
        out << (i ? ", " : "") << "[" << format_real(s.amplitude(i).real()) << ", "
            << format_real(s.amplitude(i).imag()) << "]";
    }
    out << "]}\n";
    return out.str();
}

StateVector state_from_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("state parse error: ") + e.what(), 0, 0);
    }
    if (!doc.is_object() || !doc.contains("num_qubits") || !doc.contains("amplitudes") ||
        !doc["num_qubits"].is_number_integer() || !doc["amplitudes"].is_array()) {
        throw ParseError("state JSON needs integer 'num_qubits' and array 'amplitudes'", 0, 0);
    }
    std::vector<Complex> v;
    for (const auto &z : doc["amplitudes"]) {
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
            throw ParseError("state amplitude must be a [re, im] pair", 0, 0);
        }
        v.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return StateVector(doc["num_qubits"].get<std::size_t>(), std::move(v));
}

}  // namespace qacnek
