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

#include "qacnek/nekomata.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qacnek/transforms.h"

namespace qacnek {

std::uint64_t choose_M(std::size_t n, double epsilon) {
    if (n == 0 || !(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("choose_M: need n >= 1 and 0 < epsilon < 1");
    }
    const double ln2 = std::numbers::ln2;
    const double eps_prime = 2.0 * epsilon / 3.0;
    const double log_m = std::log(ln2 / 4.0) + static_cast<double>(n) * std::log(ln2 * static_cast<double>(n) / eps_prime);
    if (log_m > 48.0 * ln2) {
        throw std::overflow_error("choose_M: M exceeds 2^48 for n=" + std::to_string(n));
    }
    const double m = (ln2 / 4.0) * std::pow(ln2 * static_cast<double>(n) / eps_prime, static_cast<double>(n));
    const double c = std::ceil(m);
    if (c > static_cast<double>(kMaxColumns)) {
        throw std::overflow_error("choose_M: M exceeds 2^48");
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(c));
}

double delta_equation(std::size_t n, std::uint64_t M, double delta) {
    const double x = 2.0 * std::pow(delta, static_cast<double>(n));
    if (x >= 1.0) {
        return -0.5;
    }
    return std::exp(2.0 * static_cast<double>(M) * std::log1p(-x)) - 0.5;
}

double solve_delta(std::size_t n, std::uint64_t M) {
    if (n == 0 || M == 0) {
        throw std::invalid_argument("solve_delta: need n >= 1 and M >= 1");
    }
    double lo = 0.0;
    double hi = std::pow(0.5, 1.0 / static_cast<double>(n));
    // f(lo) > 0 > f(hi); f is decreasing.
    for (int it = 0; it < 2000; it++) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (delta_equation(n, M, mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::abs(delta_equation(n, M, lo)) <= std::abs(delta_equation(n, M, hi)) ? lo : hi;
}

GridParams make_grid_params(std::size_t n, std::uint64_t M, double delta, double epsilon) {
    GridParams p;
    p.n = n;
    p.M = M;
    p.delta = delta;
    p.epsilon = epsilon;
    p.residual = std::abs(delta_equation(n, M, delta));
    return p;
}

Circuit build_depth2_nekomata(std::size_t n, std::uint64_t M, double delta) {
    if (n == 0 || M == 0) {
        throw std::invalid_argument("build_depth2_nekomata: need n >= 1 and M >= 1");
    }
    if (!(delta > 0.0 && delta < std::pow(0.5, 1.0 / static_cast<double>(n)))) {
        throw std::invalid_argument("build_depth2_nekomata: delta outside (0, 2^{-1/n})");
    }
    if (std::pow(delta, static_cast<double>(n)) > 0.25) {
        throw std::invalid_argument("build_depth2_nekomata: delta^n > 1/4 would not be nice");
    }
    if (M + 1 > kMaxGridQubits / n) {
        throw std::invalid_argument("build_depth2_nekomata: grid of " + std::to_string(n) + " x " +
                                    std::to_string(M + 1) + " qubits is too large");
    }
    const std::size_t rows = n;
    const std::size_t cols = static_cast<std::size_t>(M) + 1;
    auto qubit = [rows](std::size_t r, std::size_t c) { return static_cast<Qubit>(c * rows + r); };

    Circuit circ(rows * cols);
    const LocalState factor = LocalState::real_weighted(delta);
    Layer columns;
    for (std::size_t c = 0; c + 1 < cols; c++) {
        std::vector<RTensorFactor> fs;
        for (std::size_t r = 0; r < rows; r++) {
            fs.push_back({qubit(r, c), factor});
        }
        columns.gates.push_back(make_rtensor(std::move(fs)));
    }
    Layer row_ors;
    std::vector<Qubit> targets;
    for (std::size_t r = 0; r < rows; r++) {
        std::vector<Qubit> ctl;
        for (std::size_t c = 0; c + 1 < cols; c++) {
            ctl.push_back(qubit(r, c));
        }
        row_ors.gates.push_back(make_or(std::move(ctl), qubit(r, cols - 1)));
        targets.push_back(qubit(r, cols - 1));
    }
    circ.append_layer(std::move(columns));
    circ.append_layer(std::move(row_ors));
    circ.set_targets(targets);
    return circ;
}

NekomataBuild build_depthd_nekomata(std::size_t n, std::size_t d, double epsilon, DepthDOverrides overrides) {
    if (n == 0 || d < 2 || d - 2 >= 63 || (std::size_t{1} << (d - 2)) > n) {
        throw std::invalid_argument("build_depthd_nekomata: need d >= 2 and 2^{d-2} <= n");
    }
    const std::size_t block = std::size_t{1} << (d - 2);
    const std::size_t m = (n + block - 1) / block;

    NekomataBuild out;
    out.core_targets = m;
    const std::uint64_t M = overrides.M ? *overrides.M : choose_M(m, epsilon);
    const double delta = overrides.delta ? *overrides.delta : solve_delta(m, M);
    out.core = make_grid_params(m, M, delta, overrides.M ? 0.0 : epsilon);

    const Circuit core = build_depth2_nekomata(m, M, delta);
    const std::size_t grid = core.num_qubits();
    const std::vector<Qubit> core_targets = *core.targets();
    Circuit c(grid + (n - m));
    c.append_circuit(core);

    // Block sizes differ by at most one: the first n % m blocks get one extra.
    const std::size_t base = n / m;
    const std::size_t extra = n % m;
    std::vector<Qubit> targets;
    std::vector<Circuit> trees;
    std::size_t next = grid;
    for (std::size_t i = 0; i < m; i++) {
        const std::size_t size = base + (i < extra ? 1 : 0);
        std::vector<Qubit> wires{core_targets[i]};
        for (std::size_t k = 1; k < size; k++) {
            wires.push_back(static_cast<Qubit>(next++));
        }
        targets.insert(targets.end(), wires.begin(), wires.end());
        trees.push_back(circuit_relabel(fanout_tree(size, 2), c.num_qubits(), wires));
    }
    // Merge the trees level by level so they share layers.
    for (std::size_t level = 0;; level++) {
        Layer layer;
        for (const auto &t : trees) {
            if (level < t.layers().size()) {
                const auto &g = t.layers()[level].gates;
                layer.gates.insert(layer.gates.end(), g.begin(), g.end());
            }
        }
        if (layer.gates.empty()) {
            break;
        }
        c.append_layer(std::move(layer));
    }
    c.set_targets(targets);
    out.circuit = std::move(c);
    return out;
}

ClassificationResult classify(const Circuit &c) {
    ClassificationResult res;
    res.classical = Circuit(c.num_qubits());
    res.classical.set_targets(c.targets());
    const std::size_t n = c.num_qubits();
    std::vector<bool> touched(n, false);           // acted on by a classical gate
    std::vector<std::optional<std::size_t>> owner(n);  // index into res.first.gates
    bool purely = true;
    bool mostly = true;

    for (std::size_t li = 0; li < c.layers().size() && mostly; li++) {
        Layer classical_layer;
        for (const auto &g : c.layers()[li].gates) {
            const auto support = gate_support(g);
            if (is_classical_gate(g)) {
                for (Qubit q : support) {
                    touched[q] = true;
                }
                classical_layer.gates.push_back(g);
                continue;
            }
            purely = false;
            bool ok = true;
            for (Qubit q : support) {
                ok = ok && !touched[q];
            }
            if (!ok) {
                mostly = false;
                res.reason = "layer " + std::to_string(li) + ": non-classical gate after a classical gate on its qubits";
                break;
            }
            if (support.size() == 1 && owner[support[0]]) {
                // Merge consecutive one-qubit gates into the first layer.
                auto &prev = res.first.gates[*owner[support[0]]];
                if (is_multi_qubit(prev)) {
                    mostly = false;
                    res.reason = "layer " + std::to_string(li) + ": one-qubit gate after a multi-qubit reflection";
                    break;
                }
                prev = make_one_qubit(support[0], mat2_mul(one_qubit_matrix(g), one_qubit_matrix(prev)));
                continue;
            }
            for (Qubit q : support) {
                if (owner[q]) {
                    ok = false;
                }
            }
            if (!ok) {
                mostly = false;
                res.reason = "layer " + std::to_string(li) + ": two non-classical gates overlap";
                break;
            }
            for (Qubit q : support) {
                owner[q] = res.first.gates.size();
            }
            res.first.gates.push_back(g);
        }
        res.classical.append_layer(std::move(classical_layer));
    }
    res.purely_classical = purely;
    res.mostly_classical = mostly;
    if (!mostly) {
        res.first = Layer{};
        res.classical = Circuit(c.num_qubits());
        return res;
    }
    res.first.canonicalize();
    res.nice = true;
    for (const auto &g : res.first.gates) {
        const auto *r = std::get_if<RTensorGate>(&g);
        if (r == nullptr || r->factors.size() < 2) {
            continue;
        }
        double zero_weight = 1.0;
        for (const auto &f : r->factors) {
            zero_weight *= std::norm(f.state.amp0);
        }
        if (zero_weight > 0.25 + kStructuralTol) {
            res.nice = false;
            res.reason = "reflection with |<0..0|chi>|^2 = " + std::to_string(zero_weight) + " > 1/4";
        }
    }
    return res;
}

ImpurityBound impurity_bound(std::size_t n, std::uint64_t M, double delta) {
    const double dn = std::pow(delta, static_cast<double>(n));
    const double m = static_cast<double>(M);
    ImpurityBound b;
    b.exact = 4.0 * m * dn * (1.0 - dn - std::pow(1.0 - delta, static_cast<double>(n)));
    b.relaxed = 4.0 * m * static_cast<double>(n) * dn * delta;
    if (n == 1) {
        b.exact = 0.0;
    }
    return b;
}

}  // namespace qacnek
