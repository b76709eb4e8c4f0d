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

#include "qacnek/transforms.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "qacnek/state_vector.h"

namespace qacnek {

Eigen::MatrixXcd reference_unitary(ReferenceKind kind, std::size_t n) {
    if (n == 0 || n > 12) {
        throw std::invalid_argument("reference_unitary: need 1 <= n <= 12");
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t bbit = dim >> 1;
    const std::uint64_t rest = bbit - 1;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t j = 0; j < dim; j++) {
        std::uint64_t i = j;
        if (kind == ReferenceKind::kParity) {
            if (std::popcount(j & rest) & 1) {
                i ^= bbit;
            }
        } else if (j & bbit) {
            i ^= rest;
        }
        u(i, j) = 1.0;
    }
    return u;
}

Circuit expand_or(const Circuit &c) {
    Circuit out(c.num_qubits());
    out.set_targets(c.targets());
    for (const auto &layer : c.layers()) {
        Layer pre, mid, post;
        for (const auto &g : layer.gates) {
            const auto *o = std::get_if<OrGate>(&g);
            if (o == nullptr || o->controls.empty()) {
                mid.gates.push_back(g);
                continue;
            }
            for (Qubit q : o->controls) {
                pre.gates.push_back(make_x(q));
                post.gates.push_back(make_x(q));
            }
            post.gates.push_back(make_x(o->target));
            mid.gates.push_back(make_toffoli(o->controls, o->target));
        }
        out.append_layer(std::move(pre));
        out.append_layer(std::move(mid));
        out.append_layer(std::move(post));
    }
    return out;
}

namespace {

/// Unitary with |1> -> chi and a real non-negative (0,0) entry.
Mat2 one_to_state(const LocalState &chi) {
    Complex u0 = std::conj(chi.amp1);
    Complex u1 = -std::conj(chi.amp0);
    Complex phase = 1.0;
    if (std::abs(u0) > kStructuralTol) {
        phase = std::conj(u0) / std::abs(u0);
    } else if (std::abs(u1) > 0.0) {
        phase = std::conj(u1) / std::abs(u1);
    }
    u0 *= phase;
    u1 *= phase;
    return {u0, chi.amp0, u1, chi.amp1};
}

LocalState apply_mat(const Mat2 &m, const LocalState &s) { return s.apply(m); }

}  // namespace

RTensorSynthesis synthesize_rtensor(const std::vector<RTensorFactor> &factors) {
    if (factors.empty()) {
        throw std::invalid_argument("synthesize_rtensor: need at least one factor");
    }
    RTensorSynthesis out;
    std::vector<Qubit> controls;
    for (std::size_t k = 0; k + 1 < factors.size(); k++) {
        out.local.gates.push_back(make_one_qubit(factors[k].qubit, one_to_state(factors[k].state)));
        controls.push_back(factors[k].qubit);
    }
    const auto &last = factors.back();
    out.local.gates.push_back(make_one_qubit(last.qubit, mat2_mul(one_to_state(last.state), mat2_h())));
    out.toffoli = make_toffoli(controls, last.qubit);
    out.local.canonicalize();
    return out;
}

Circuit synthesize_rtensor_circuit(std::size_t num_qubits, const std::vector<RTensorFactor> &factors) {
    const RTensorSynthesis s = synthesize_rtensor(factors);
    Layer inverse;
    for (const auto &g : s.local.gates) {
        inverse.gates.push_back(gate_inverse(g));
    }
    Circuit c(num_qubits);
    c.append_layer(inverse);
    c.append_layer({s.toffoli});
    c.append_layer(s.local);
    return c;
}

Circuit to_rtensor_normal_form(const Circuit &c) {
    const std::size_t n = c.num_qubits();
    std::vector<std::optional<Mat2>> pending(n);
    auto current = [&](Qubit q) { return pending[q] ? *pending[q] : mat2_identity(); };
    auto conjugated = [&](Qubit q, const LocalState &s) { return RTensorFactor{q, apply_mat(current(q), s)}; };

    std::vector<Layer> emitted;  // multi-qubit layers, last first
    for (auto it = c.layers().rbegin(); it != c.layers().rend(); ++it) {
        Layer out;
        for (const auto &g : it->gates) {
            if (!is_multi_qubit(g)) {
                const Qubit q = gate_support(g).front();
                pending[q] = mat2_mul(current(q), one_qubit_matrix(g));
                continue;
            }
            std::vector<RTensorFactor> factors;
            if (const auto *r = std::get_if<RTensorGate>(&g)) {
                for (const auto &f : r->factors) {
                    factors.push_back(conjugated(f.qubit, f.state));
                }
            } else if (const auto *t = std::get_if<ToffoliGate>(&g)) {
                // Toffoli = R_{|1..1,->}.
                for (Qubit q : t->controls) {
                    factors.push_back(conjugated(q, LocalState::one()));
                }
                factors.push_back(conjugated(t->target, LocalState::minus()));
            } else if (const auto *o = std::get_if<OrGate>(&g)) {
                // OR = X_target R_{|0..0,->}, and the two factors commute.
                for (Qubit q : o->controls) {
                    factors.push_back(conjugated(q, LocalState::zero()));
                }
                factors.push_back(conjugated(o->target, LocalState::minus()));
                pending[o->target] = mat2_mul(current(o->target), mat2_x());
            } else {
                throw std::invalid_argument("to_rtensor_normal_form: fanout gates have no single-reflection form");
            }
            out.gates.push_back(make_rtensor(std::move(factors)));
        }
        if (!out.gates.empty()) {
            emitted.push_back(std::move(out));
        }
    }

    Circuit result(n);
    result.set_targets(c.targets());
    Layer initial;
    for (Qubit q = 0; q < n; q++) {
        if (pending[q]) {
            initial.gates.push_back(make_one_qubit(q, *pending[q]));
        }
    }
    result.append_layer(std::move(initial));
    for (auto it = emitted.rbegin(); it != emitted.rend(); ++it) {
        result.append_layer(std::move(*it));
    }
    return result;
}

Circuit conjugate_by_hadamards(const Circuit &c, std::size_t n) {
    if (n > c.num_qubits()) {
        throw std::invalid_argument("conjugate_by_hadamards: circuit has fewer than n qubits");
    }
    Layer hs;
    for (Qubit q = 0; q < n; q++) {
        hs.gates.push_back(make_h(q));
    }
    Circuit out(c.num_qubits());
    out.set_targets(c.targets());
    out.append_layer(hs);
    out.append_circuit(c);
    out.append_layer(hs);
    return out;
}

Circuit fanout_tree(std::size_t n, std::size_t m) {
    if (n == 0 || m < 2) {
        throw std::invalid_argument("fanout_tree: need n >= 1 and m >= 2");
    }
    Circuit c(n);
    std::size_t holders = 1;
    while (holders < n) {
        Layer layer;
        std::size_t next = holders;
        for (std::size_t h = 0; h < holders && next < n; h++) {
            std::vector<Qubit> targets;
            for (std::size_t k = 0; k + 1 < m && next < n; k++) {
                targets.push_back(static_cast<Qubit>(next++));
            }
            layer.gates.push_back(make_fanout(static_cast<Qubit>(h), std::move(targets)));
        }
        holders = next;
        c.append_layer(std::move(layer));
    }
    return c;
}

Circuit parity_from_nekomata(const Circuit &constructor, std::size_t n) {
    const std::size_t a = constructor.num_qubits();
    if (n == 0 || a < n) {
        throw std::invalid_argument("parity_from_nekomata: constructor must act on at least n qubits");
    }
    const std::size_t total = n + a + 1;
    std::vector<Qubit> shift(a);
    for (std::size_t j = 0; j < a; j++) {
        shift[j] = static_cast<Qubit>(n + j);
    }
    const Circuit fwd = circuit_relabel(constructor, total, shift);
    const Circuit back = circuit_relabel(circuit_inverse(constructor), total, shift);
    Layer cz;
    for (Qubit i = 0; i < n; i++) {
        cz.gates.push_back(make_cz(i, static_cast<Qubit>(n + i)));
    }
    std::vector<Qubit> wires(shift);
    const Qubit parity = static_cast<Qubit>(n + a);

    Circuit out(total);
    out.append_circuit(fwd);
    out.append_layer(cz);
    out.append_circuit(back);
    out.append_layer({make_or(wires, parity)});
    out.append_circuit(fwd);
    out.append_layer(cz);
    out.append_circuit(back);
    std::vector<Qubit> targets;
    for (Qubit i = 0; i < n; i++) {
        targets.push_back(i);
    }
    targets.push_back(parity);
    out.set_targets(targets);
    return out;
}

Circuit cat_from_restricted_fanout(const Circuit &c, std::size_t n) {
    if (n == 0 || n > c.num_qubits()) {
        throw std::invalid_argument("cat_from_restricted_fanout: circuit has fewer than n qubits");
    }
    Circuit out(c.num_qubits());
    std::vector<Qubit> targets;
    for (Qubit q = 0; q < n; q++) {
        targets.push_back(q);
    }
    out.set_targets(targets);
    out.append_layer({make_h(0)});
    out.append_circuit(c);
    return out;
}

Circuit x_conjugated_constructor(const Circuit &constructor, std::size_t n) {
    if (n > constructor.num_qubits()) {
        throw std::invalid_argument("x_conjugated_constructor: too few qubits");
    }
    Circuit out = constructor;
    Layer xs;
    for (Qubit q = 0; q < n; q++) {
        xs.gates.push_back(make_x(q));
    }
    out.append_layer(std::move(xs));
    return out;
}

namespace {

std::vector<Qubit> open_wires(std::size_t k) {
    std::vector<Qubit> w;
    for (std::size_t j = 0; j < k; j++) {
        w.push_back(static_cast<Qubit>(2 + j));
    }
    return w;
}

}  // namespace

Circuit fig7_left(std::size_t k) {
    Circuit c(k + 2);
    const auto ctl = open_wires(k);
    c.append_layer({make_or(ctl, 1)});
    c.append_layer({make_x(1)});
    c.append_layer({make_cz(0, 1)});
    c.append_layer({make_x(1)});
    c.append_layer({make_or(ctl, 1)});
    return c;
}

Circuit fig7_right(std::size_t k) {
    Circuit c(k + 2);
    std::vector<RTensorFactor> factors{{0, LocalState::one()}};
    for (Qubit q : open_wires(k)) {
        factors.push_back({q, LocalState::zero()});
    }
    c.append_layer({make_rtensor(std::move(factors))});
    return c;
}

bool fig7_rewrite_check(std::size_t k) {
    if (k < 2) {
        throw std::invalid_argument("fig7_rewrite_check: need k >= 2");
    }
    const std::size_t n = k + 2;
    const Circuit left = fig7_left(k);
    const Circuit right = fig7_right(k);
    const std::uint64_t anc = std::uint64_t{1} << (n - 2);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); x++) {
        if (x & anc) {
            continue;
        }
        const StateVector a = run(left, StateVector::basis(n, x));
        const StateVector b = run(right, StateVector::basis(n, x));
        for (std::uint64_t i = 0; i < a.dimension(); i++) {
            if (std::abs(a.amplitude(i) - b.amplitude(i)) > 1e-10) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace qacnek
