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

#include "qacnek/circuit.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qacnek {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Mat2 mat2_identity() { return {1.0, 0.0, 0.0, 1.0}; }
Mat2 mat2_x() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 mat2_z() { return {1.0, 0.0, 0.0, -1.0}; }
Mat2 mat2_h() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
}

Mat2 mat2_mul(const Mat2 &a, const Mat2 &b) {
    return {
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    };
}

Mat2 mat2_adjoint(const Mat2 &a) { return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}; }

bool mat2_approx_equal(const Mat2 &a, const Mat2 &b, double tol) {
    for (int k = 0; k < 4; k++) {
        if (std::abs(a[k] - b[k]) > tol) {
            return false;
        }
    }
    return true;
}

bool mat2_is_unitary(const Mat2 &m, double tol) { return mat2_approx_equal(mat2_mul(mat2_adjoint(m), m), mat2_identity(), tol); }

LocalState LocalState::plus() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s};
}

LocalState LocalState::minus() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, -s};
}

LocalState LocalState::real_weighted(double w0) { return {std::sqrt(w0), std::sqrt(1.0 - w0)}; }

bool LocalState::is_normalized(double tol) const { return std::abs(norm_sq() - 1.0) <= tol; }

Gate make_one_qubit(Qubit q, const Mat2 &m) { return OneQubitGate{q, m}; }
Gate make_x(Qubit q) { return OneQubitGate{q, mat2_x()}; }
Gate make_h(Qubit q) { return OneQubitGate{q, mat2_h()}; }

Gate make_toffoli(std::vector<Qubit> controls, Qubit target) {
    if (controls.empty()) {
        return make_x(target);
    }
    return ToffoliGate{std::move(controls), target};
}

Gate make_cnot(Qubit control, Qubit target) { return ToffoliGate{{control}, target}; }

Gate make_or(std::vector<Qubit> controls, Qubit target) {
    if (controls.empty()) {
        return OneQubitGate{target, mat2_identity()};
    }
    return OrGate{std::move(controls), target};
}

Gate make_rtensor(std::vector<RTensorFactor> factors) {
    std::sort(factors.begin(), factors.end(), [](const RTensorFactor &a, const RTensorFactor &b) {
        return a.qubit < b.qubit;
    });
    return RTensorGate{std::move(factors)};
}

Gate make_cz(Qubit a, Qubit b) { return make_rtensor({{a, LocalState::one()}, {b, LocalState::one()}}); }

Gate make_fanout(Qubit source, std::vector<Qubit> targets) {
    if (targets.empty()) {
        return OneQubitGate{source, mat2_identity()};
    }
    if (targets.size() == 1) {
        return make_cnot(source, targets[0]);
    }
    return FanoutGate{source, std::move(targets)};
}

std::vector<Qubit> gate_support(const Gate &g) {
    std::vector<Qubit> s = std::visit(
        overloaded{
            [](const OneQubitGate &x) { return std::vector<Qubit>{x.qubit}; },
            [](const ToffoliGate &x) {
                auto v = x.controls;
                v.push_back(x.target);
                return v;
            },
            [](const OrGate &x) {
                auto v = x.controls;
                v.push_back(x.target);
                return v;
            },
            [](const RTensorGate &x) {
                std::vector<Qubit> v;
                for (const auto &f : x.factors) {
                    v.push_back(f.qubit);
                }
                return v;
            },
            [](const FanoutGate &x) {
                auto v = x.targets;
                v.push_back(x.source);
                return v;
            },
        },
        g);
    std::sort(s.begin(), s.end());
    return s;
}

std::size_t gate_arity(const Gate &g) {
    return std::visit(
        overloaded{
            [](const OneQubitGate &) -> std::size_t { return 1; },
            [](const ToffoliGate &x) -> std::size_t { return x.controls.size() + 1; },
            [](const OrGate &x) -> std::size_t { return x.controls.size() + 1; },
            [](const RTensorGate &x) -> std::size_t { return x.factors.size(); },
            [](const FanoutGate &x) -> std::size_t { return x.targets.size() + 1; },
        },
        g);
}

bool is_classical_gate(const Gate &g, double tol) {
    if (const auto *u = std::get_if<OneQubitGate>(&g)) {
        return mat2_approx_equal(u->matrix, mat2_identity(), tol) || mat2_approx_equal(u->matrix, mat2_x(), tol);
    }
    return !std::holds_alternative<RTensorGate>(g);
}

Gate gate_inverse(const Gate &g) {
    if (const auto *u = std::get_if<OneQubitGate>(&g)) {
        return OneQubitGate{u->qubit, mat2_adjoint(u->matrix)};
    }
    // Toffoli, OR, R-tensor and fanout gates are all involutions.
    return g;
}

Gate gate_relabel(const Gate &g, const std::vector<Qubit> &mapping) {
    auto m = [&](Qubit q) {
        if (q >= mapping.size()) {
            throw std::out_of_range("gate_relabel: qubit " + std::to_string(q) + " has no mapping");
        }
        return mapping[q];
    };
    auto mv = [&](const std::vector<Qubit> &v) {
        std::vector<Qubit> r;
        r.reserve(v.size());
        for (Qubit q : v) {
            r.push_back(m(q));
        }
        return r;
    };
    return std::visit(
        overloaded{
            [&](const OneQubitGate &x) -> Gate { return OneQubitGate{m(x.qubit), x.matrix}; },
            [&](const ToffoliGate &x) -> Gate { return ToffoliGate{mv(x.controls), m(x.target)}; },
            [&](const OrGate &x) -> Gate { return OrGate{mv(x.controls), m(x.target)}; },
            [&](const RTensorGate &x) -> Gate {
                std::vector<RTensorFactor> fs;
                for (const auto &f : x.factors) {
                    fs.push_back({m(f.qubit), f.state});
                }
                return make_rtensor(std::move(fs));
            },
            [&](const FanoutGate &x) -> Gate { return FanoutGate{m(x.source), mv(x.targets)}; },
        },
        g);
}

Mat2 one_qubit_matrix(const Gate &g) {
    return std::visit(
        overloaded{
            [](const OneQubitGate &x) { return x.matrix; },
            [](const ToffoliGate &x) {
                if (!x.controls.empty()) {
                    throw std::invalid_argument("one_qubit_matrix: Toffoli gate has controls");
                }
                return mat2_x();
            },
            [](const OrGate &x) {
                if (!x.controls.empty()) {
                    throw std::invalid_argument("one_qubit_matrix: OR gate has controls");
                }
                return mat2_identity();
            },
            [](const RTensorGate &x) {
                if (x.factors.size() != 1) {
                    throw std::invalid_argument("one_qubit_matrix: R-tensor gate is not one-qubit");
                }
                // I - 2|chi><chi|
                const auto &s = x.factors[0].state;
                return Mat2{
                    1.0 - 2.0 * s.amp0 * std::conj(s.amp0),
                    -2.0 * s.amp0 * std::conj(s.amp1),
                    -2.0 * s.amp1 * std::conj(s.amp0),
                    1.0 - 2.0 * s.amp1 * std::conj(s.amp1),
                };
            },
            [](const FanoutGate &x) {
                if (!x.targets.empty()) {
                    throw std::invalid_argument("one_qubit_matrix: fanout gate has targets");
                }
                return mat2_identity();
            },
        },
        g);
}

std::string gate_kind_name(const Gate &g) {
    return std::visit(
        overloaded{
            [](const OneQubitGate &) { return std::string("u1"); },
            [](const ToffoliGate &) { return std::string("toffoli"); },
            [](const OrGate &) { return std::string("or"); },
            [](const RTensorGate &) { return std::string("rtensor"); },
            [](const FanoutGate &) { return std::string("fanout"); },
        },
        g);
}

bool Layer::has_multi_qubit_gate() const {
    return std::any_of(gates.begin(), gates.end(), [](const Gate &g) { return is_multi_qubit(g); });
}

void Layer::canonicalize() {
    std::stable_sort(gates.begin(), gates.end(), [](const Gate &a, const Gate &b) {
        return gate_support(a).front() < gate_support(b).front();
    });
}

Circuit &Circuit::append_layer(Layer layer) {
    if (layer.gates.empty()) {
        return *this;
    }
    layer.canonicalize();
    layers_.push_back(std::move(layer));
    return *this;
}

Circuit &Circuit::append_circuit(const Circuit &other) {
    if (other.num_qubits() > num_qubits_) {
        throw std::invalid_argument("append_circuit: appended circuit has more qubits");
    }
    for (const auto &layer : other.layers()) {
        append_layer(layer);
    }
    return *this;
}

Circuit &Circuit::set_targets(std::optional<std::vector<Qubit>> targets) {
    targets_ = std::move(targets);
    return *this;
}

std::vector<Qubit> Circuit::target_list() const {
    if (targets_) {
        return *targets_;
    }
    std::vector<Qubit> all(num_qubits_);
    for (std::size_t k = 0; k < num_qubits_; k++) {
        all[k] = static_cast<Qubit>(k);
    }
    return all;
}

std::size_t circuit_size(const Circuit &c) {
    std::size_t n = 0;
    for (const auto &layer : c.layers()) {
        n += std::count_if(layer.gates.begin(), layer.gates.end(), [](const Gate &g) { return is_multi_qubit(g); });
    }
    return n;
}

std::size_t circuit_depth(const Circuit &c) {
    return std::count_if(c.layers().begin(), c.layers().end(), [](const Layer &l) { return l.has_multi_qubit_gate(); });
}

Topology circuit_topology(const Circuit &c) {
    Topology t;
    std::size_t k = 0;
    for (const auto &layer : c.layers()) {
        if (!layer.has_multi_qubit_gate()) {
            continue;
        }
        for (const auto &g : layer.gates) {
            if (is_multi_qubit(g)) {
                t.insert({gate_support(g), k});
            }
        }
        k++;
    }
    return t;
}

std::vector<std::string> validate(const Circuit &c) {
    std::vector<std::string> out;
    const std::size_t n = c.num_qubits();
    if (n == 0) {
        out.push_back("circuit has no qubits");
    }
    for (std::size_t li = 0; li < c.layers().size(); li++) {
        const auto &layer = c.layers()[li];
        std::vector<int> owner(n, -1);
        for (std::size_t gi = 0; gi < layer.gates.size(); gi++) {
            const Gate &g = layer.gates[gi];
            const std::string where = "layer " + std::to_string(li) + " gate " + std::to_string(gi) + ": ";
            // gate_support sorts, so raw lists are checked for duplicates here.
            auto raw = std::visit(
                overloaded{
                    [](const OneQubitGate &x) { return std::vector<Qubit>{x.qubit}; },
                    [](const ToffoliGate &x) {
                        auto v = x.controls;
                        v.push_back(x.target);
                        return v;
                    },
                    [](const OrGate &x) {
                        auto v = x.controls;
                        v.push_back(x.target);
                        return v;
                    },
                    [](const RTensorGate &x) {
                        std::vector<Qubit> v;
                        for (const auto &f : x.factors) {
                            v.push_back(f.qubit);
                        }
                        return v;
                    },
                    [](const FanoutGate &x) {
                        auto v = x.targets;
                        v.push_back(x.source);
                        return v;
                    },
                },
                g);
            auto sorted = raw;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                out.push_back(where + "repeated qubit in gate support");
            }
            for (Qubit q : sorted) {
                if (q >= n) {
                    out.push_back(where + "qubit index out of range (" + std::to_string(q) + ")");
                    continue;
                }
                if (owner[q] >= 0 && owner[q] != static_cast<int>(gi)) {
                    out.push_back(where + "overlapping supports on qubit " + std::to_string(q));
                }
                owner[q] = static_cast<int>(gi);
            }
            if (const auto *u = std::get_if<OneQubitGate>(&g)) {
                if (!mat2_is_unitary(u->matrix)) {
                    out.push_back(where + "non-unitary matrix");
                }
            } else if (const auto *r = std::get_if<RTensorGate>(&g)) {
                if (r->factors.empty()) {
                    out.push_back(where + "R-tensor gate has no factors");
                }
                for (const auto &f : r->factors) {
                    if (!f.state.is_normalized()) {
                        out.push_back(where + "non-normalized local state on qubit " + std::to_string(f.qubit));
                    }
                }
            }
        }
    }
    if (c.targets()) {
        auto t = *c.targets();
        for (Qubit q : t) {
            if (q >= n) {
                out.push_back("target qubit index out of range (" + std::to_string(q) + ")");
            }
        }
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
            out.push_back("targets are not pairwise distinct");
        }
    }
    return out;
}

Circuit circuit_inverse(const Circuit &c) {
    Circuit r(c.num_qubits());
    for (auto it = c.layers().rbegin(); it != c.layers().rend(); ++it) {
        Layer l;
        for (const auto &g : it->gates) {
            l.gates.push_back(gate_inverse(g));
        }
        r.append_layer(std::move(l));
    }
    r.set_targets(c.targets());
    return r;
}

Circuit circuit_relabel(const Circuit &c, std::size_t num_qubits, const std::vector<Qubit> &mapping) {
    Circuit r(num_qubits);
    for (const auto &layer : c.layers()) {
        Layer l;
        for (const auto &g : layer.gates) {
            l.gates.push_back(gate_relabel(g, mapping));
        }
        r.append_layer(std::move(l));
    }
    if (c.targets()) {
        std::vector<Qubit> t;
        for (Qubit q : *c.targets()) {
            t.push_back(mapping.at(q));
        }
        r.set_targets(t);
    }
    return r;
}

}  // namespace qacnek
