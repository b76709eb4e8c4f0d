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

// Ancilla elimination for two layers of reflections.
//
// Measuring qubit h of R_{phi (x) chi} in a basis containing phi is the same
// as measuring h of the input and, on outcome phi, applying R_chi to the rest
// (R_{phi (x) chi} = (I - |phi><phi|) (x) I + |phi><phi| (x) R_chi). So every
// branch of a measurement is again a two-layer construction on fewer qubits.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "qacnek/analysis.h"

namespace qacnek {

namespace {

constexpr std::size_t kMaxReduceQubits = 14;
constexpr double kBranchFloor = 1e-15;

const RTensorGate &as_rtensor(const Gate &g) {
    const auto *r = std::get_if<RTensorGate>(&g);
    if (r == nullptr) {
        throw std::invalid_argument("reduce_depth2_construction: layers must hold R-tensor gates only");
    }
    return *r;
}

// cover[q] = index of the gate in `layer` acting on q.
std::vector<std::optional<std::size_t>> coverage(const Layer &layer, std::size_t n) {
    std::vector<std::optional<std::size_t>> cover(n);
    for (std::size_t i = 0; i < layer.gates.size(); i++) {
        for (const auto &f : as_rtensor(layer.gates[i]).factors) {
            if (f.qubit >= n) {
                throw std::out_of_range("reduce_depth2_construction: gate qubit out of range");
            }
            if (cover[f.qubit]) {
                throw std::invalid_argument("reduce_depth2_construction: gates in a layer overlap");
            }
            cover[f.qubit] = i;
        }
    }
    return cover;
}

void check_construction(const Depth2Construction &c) {
    if (c.num_qubits == 0 || c.num_qubits > kMaxReduceQubits) {
        throw std::invalid_argument("reduce_depth2_construction: need 1..14 qubits");
    }
    if (c.input.size() != c.num_qubits) {
        throw std::invalid_argument("reduce_depth2_construction: input needs one state per qubit");
    }
    for (const auto &s : c.input) {
        if (!s.is_normalized(1e-10)) {
            throw std::invalid_argument("reduce_depth2_construction: input factor not normalized");
        }
    }
    std::vector<bool> seen(c.num_qubits, false);
    for (Qubit t : c.targets) {
        if (t >= c.num_qubits || seen[t]) {
            throw std::invalid_argument("reduce_depth2_construction: targets must be distinct and in range");
        }
        seen[t] = true;
    }
    if (c.targets.empty()) {
        throw std::invalid_argument("reduce_depth2_construction: need at least one target");
    }
    coverage(c.L1, c.num_qubits);
    coverage(c.L2, c.num_qubits);
}

StateVector output_state(const Depth2Construction &c) {
    StateVector s = StateVector::product(c.input);
    for (const auto &g : c.L1.gates) {
        s = apply_gate(std::move(s), g);
    }
    for (const auto &g : c.L2.gates) {
        s = apply_gate(std::move(s), g);
    }
    return s;
}

// Conditions `layer` on the outcomes: a gate touching a qubit whose outcome
// was the orthogonal state disappears; otherwise it loses the measured factors.
Layer condition_layer(const Layer &layer, const std::vector<Qubit> &measured, std::uint64_t branch) {
    Layer out;
    for (const auto &g : layer.gates) {
        const auto &r = as_rtensor(g);
        std::vector<RTensorFactor> keep;
        bool alive = true;
        bool touched = false;
        for (const auto &f : r.factors) {
            const auto it = std::find(measured.begin(), measured.end(), f.qubit);
            if (it == measured.end()) {
                keep.push_back(f);
                continue;
            }
            touched = true;
            const std::size_t k = static_cast<std::size_t>(it - measured.begin());
            alive = alive && ((branch >> k) & 1) == 0;
        }
        if (!touched) {
            out.gates.push_back(g);
        } else if (alive && !keep.empty()) {
            // An emptied reflection is -I; the sign does not matter.
            out.gates.push_back(make_rtensor(std::move(keep)));
        }
    }
    return out;
}

// Drops `gone` and renumbers the rest; `origin` (if given) follows along.
Depth2Construction remove_qubits(const Depth2Construction &c, const std::vector<Qubit> &gone,
                                 std::vector<Qubit> *origin = nullptr) {
    std::vector<Qubit> mapping(c.num_qubits, 0);
    std::vector<Qubit> new_origin;
    Depth2Construction out;
    for (Qubit q = 0; q < c.num_qubits; q++) {
        if (std::find(gone.begin(), gone.end(), q) != gone.end()) {
            continue;
        }
        mapping[q] = static_cast<Qubit>(out.input.size());
        out.input.push_back(c.input[q]);
        if (origin) {
            new_origin.push_back((*origin)[q]);
        }
    }
    out.num_qubits = out.input.size();
    for (const auto &g : c.L1.gates) {
        out.L1.gates.push_back(gate_relabel(g, mapping));
    }
    for (const auto &g : c.L2.gates) {
        out.L2.gates.push_back(gate_relabel(g, mapping));
    }
    for (Qubit t : c.targets) {
        out.targets.push_back(mapping[t]);
    }
    if (origin) {
        *origin = std::move(new_origin);
    }
    return out;
}

struct Branch {
    double probability = 0.0;
    Depth2Construction construction;
};

// Measures `qubits` in the bases given by the factors of `basis_layer`
// (1 or 2). `consumed` is an L1 gate supported inside `qubits` whose output
// is what gets measured; otherwise the input factors are.
std::vector<Branch> measure_branches(const Depth2Construction &c, const std::vector<Qubit> &qubits, int basis_layer,
                                     std::optional<std::size_t> consumed) {
    const Layer &bl = basis_layer == 1 ? c.L1 : c.L2;
    const auto cover = coverage(bl, c.num_qubits);
    std::vector<LocalState> basis;
    for (Qubit q : qubits) {
        const auto &r = as_rtensor(bl.gates[cover[q].value()]);
        const auto it = std::find_if(r.factors.begin(), r.factors.end(), [q](const auto &f) { return f.qubit == q; });
        basis.push_back(it->state);
    }

    // Amplitudes of the measured qubits before measurement, restricted to them.
    std::vector<LocalState> in;
    for (Qubit q : qubits) {
        in.push_back(c.input[q]);
    }
    const std::size_t k = qubits.size();
    StateVector local = StateVector::product(in);
    if (consumed) {
        std::vector<Qubit> idx(c.num_qubits, 0);
        for (std::size_t i = 0; i < k; i++) {
            idx[qubits[i]] = static_cast<Qubit>(i);
        }
        local = apply_gate(std::move(local), gate_relabel(c.L1.gates[*consumed], idx));
    }

    std::vector<Branch> out;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << k); b++) {
        std::vector<LocalState> outcome;
        for (std::size_t i = 0; i < k; i++) {
            outcome.push_back(((b >> i) & 1) ? basis[i].orthogonal() : basis[i]);
        }
        Branch br;
        br.probability = std::norm(inner_product(StateVector::product(outcome), local));
        Depth2Construction next = c;
        if (consumed) {
            next.L1.gates.erase(next.L1.gates.begin() + static_cast<std::ptrdiff_t>(*consumed));
        }
        if (basis_layer == 1) {
            next.L1 = condition_layer(next.L1, qubits, b);
        } else {
            next.L2 = condition_layer(next.L2, qubits, b);
        }
        br.construction = std::move(next);
        out.push_back(std::move(br));
    }
    return out;
}

LocalState random_local(Rng &rng) {
    const Complex a(rng.normal(), rng.normal());
    const Complex b(rng.normal(), rng.normal());
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    return {a / norm, b / norm};
}

Layer random_layer(std::size_t n, Rng &rng) {
    std::vector<Qubit> order(n);
    for (std::size_t i = 0; i < n; i++) {
        order[i] = static_cast<Qubit>(i);
    }
    for (std::size_t i = n; i > 1; i--) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    Layer layer;
    for (std::size_t i = 0; i < n;) {
        const std::size_t len = std::min<std::size_t>(n - i, 1 + rng.below(3));
        std::vector<RTensorFactor> fs;
        for (std::size_t k = 0; k < len; k++) {
            fs.push_back({order[i + k], random_local(rng)});
        }
        i += len;
        if (rng.bernoulli(0.8)) {
            layer.gates.push_back(make_rtensor(std::move(fs)));
        }
    }
    return layer;
}

}  // namespace

Depth2Construction random_depth2_construction(std::size_t num_qubits, std::size_t num_targets, Rng &rng) {
    if (num_targets == 0 || num_targets > num_qubits || num_qubits > kMaxReduceQubits) {
        throw std::invalid_argument("random_depth2_construction: need 1 <= targets <= qubits <= 14");
    }
    Depth2Construction c;
    c.num_qubits = num_qubits;
    for (std::size_t q = 0; q < num_qubits; q++) {
        c.input.push_back(random_local(rng));
    }
    c.L1 = random_layer(num_qubits, rng);
    c.L2 = random_layer(num_qubits, rng);
    for (std::size_t t = 0; t < num_targets; t++) {
        c.targets.push_back(static_cast<Qubit>(t));
    }
    return c;
}

double target_goal_probability(const Depth2Construction &c, const StateVector &goal) {
    check_construction(c);
    const std::size_t nt = c.targets.size();
    if (goal.num_qubits() != nt) {
        throw std::invalid_argument("target_goal_probability: goal must live on the targets");
    }
    const StateVector s = output_state(c);
    std::vector<Qubit> anc;
    for (Qubit q = 0; q < c.num_qubits; q++) {
        if (std::find(c.targets.begin(), c.targets.end(), q) == c.targets.end()) {
            anc.push_back(q);
        }
    }
    const std::size_t n = c.num_qubits;
    std::vector<Complex> proj(std::size_t{1} << anc.size(), Complex{0.0});
    for (std::uint64_t i = 0; i < s.dimension(); i++) {
        std::uint64_t t = 0, a = 0;
        for (Qubit q : c.targets) {
            t = (t << 1) | ((i >> (n - 1 - q)) & 1);
        }
        for (Qubit q : anc) {
            a = (a << 1) | ((i >> (n - 1 - q)) & 1);
        }
        proj[a] += std::conj(goal.amplitude(t)) * s.amplitude(i);
    }
    double p = 0.0;
    for (const auto &v : proj) {
        p += std::norm(v);
    }
    return p;
}

bool satisfies_reduced_form(const Depth2Construction &c) {
    check_construction(c);
    const auto c1 = coverage(c.L1, c.num_qubits);
    const auto c2 = coverage(c.L2, c.num_qubits);
    std::vector<bool> is_target(c.num_qubits, false);
    for (Qubit t : c.targets) {
        is_target[t] = true;
    }
    for (Qubit q = 0; q < c.num_qubits; q++) {
        if (!is_target[q] && (!c1[q] || !c2[q])) {
            return false;
        }
    }
    for (const Layer *l : {&c.L1, &c.L2}) {
        for (const auto &g : l->gates) {
            const auto sup = gate_support(g);
            if (std::none_of(sup.begin(), sup.end(), [&](Qubit q) { return is_target[q]; })) {
                return false;
            }
        }
    }
    return true;
}

ReductionResult reduce_depth2_construction(const Depth2Construction &input, const StateVector &goal) {
    ReductionResult res;
    Depth2Construction c = input;
    std::vector<Qubit> origin(c.num_qubits);
    for (Qubit q = 0; q < c.num_qubits; q++) {
        origin[q] = q;
    }
    double current = target_goal_probability(c, goal);
    res.initial_probability = current;

    auto take_branch = [&](std::vector<Branch> branches, const std::vector<Qubit> &measured) {
        ReductionStep step;
        step.action = "measure";
        step.before = current;
        for (Qubit q : measured) {
            step.qubits.push_back(origin[q]);
        }
        std::optional<std::size_t> pick;
        std::size_t best = 0;
        std::vector<double> fid(branches.size(), -1.0);
        for (std::size_t b = 0; b < branches.size(); b++) {
            if (branches[b].probability <= kBranchFloor) {
                continue;
            }
            fid[b] = target_goal_probability(remove_qubits(branches[b].construction, measured), goal);
            step.branch_average += branches[b].probability * fid[b];
            if (fid[b] > fid[best] || fid[best] < 0.0) {
                best = b;
            }
            if (!pick && fid[b] >= current - 1e-12) {
                pick = b;
            }
        }
        // The weighted average equals the current value, so some branch
        // always qualifies up to rounding.
        const std::size_t b = pick.value_or(best);
        step.branch = b;
        step.after = fid[b];
        c = remove_qubits(branches[b].construction, measured, &origin);
        current = fid[b];
        res.steps.push_back(std::move(step));
    };

    for (;;) {
        const auto c1 = coverage(c.L1, c.num_qubits);
        const auto c2 = coverage(c.L2, c.num_qubits);
        std::vector<bool> is_target(c.num_qubits, false);
        for (Qubit t : c.targets) {
            is_target[t] = true;
        }
        std::optional<Qubit> no_l2, no_l1;
        for (Qubit q = 0; q < c.num_qubits; q++) {
            if (is_target[q]) {
                continue;
            }
            if (!c2[q] && !no_l2) {
                no_l2 = q;
            }
            if (c2[q] && !c1[q] && !no_l1) {
                no_l1 = q;
            }
        }

        if (no_l2) {
            const Qubit q = *no_l2;
            if (!c1[q]) {
                ReductionStep step;
                step.action = "drop";
                step.qubits = {origin[q]};
                step.before = current;
                c = remove_qubits(c, {q}, &origin);
                step.after = current = target_goal_probability(c, goal);
                step.branch_average = step.after;
                res.steps.push_back(std::move(step));
            } else {
                take_branch(measure_branches(c, {q}, 1, std::nullopt), {q});
            }
            continue;
        }
        if (no_l1) {
            take_branch(measure_branches(c, {*no_l1}, 2, std::nullopt), {*no_l1});
            continue;
        }

        auto touches_target = [&](const Gate &g) {
            const auto sup = gate_support(g);
            return std::any_of(sup.begin(), sup.end(), [&](Qubit q) { return is_target[q]; });
        };
        bool progressed = false;
        for (std::size_t i = 0; i < c.L1.gates.size() && !progressed; i++) {
            if (!touches_target(c.L1.gates[i])) {
                const auto sup = gate_support(c.L1.gates[i]);
                take_branch(measure_branches(c, sup, 2, i), sup);
                progressed = true;
            }
        }
        if (progressed) {
            continue;
        }
        for (std::size_t i = 0; i < c.L2.gates.size() && !progressed; i++) {
            if (!touches_target(c.L2.gates[i])) {
                ReductionStep step;
                step.action = "remove-gate";
                for (Qubit q : gate_support(c.L2.gates[i])) {
                    step.qubits.push_back(origin[q]);
                }
                step.before = current;
                c.L2.gates.erase(c.L2.gates.begin() + static_cast<std::ptrdiff_t>(i));
                step.after = current = target_goal_probability(c, goal);
                step.branch_average = step.after;
                res.steps.push_back(std::move(step));
                progressed = true;
            }
        }
        if (!progressed) {
            break;
        }
    }
    res.final_probability = current;
    res.construction = std::move(c);
    return res;
}

}  // namespace qacnek
