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

#include "qacnek/classical_sim.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qacnek {

std::string bits_to_string(const Bits &b) {
    std::string s(b.size(), '0');
    for (std::size_t k = 0; k < b.size(); k++) {
        if (b[k]) {
            s[k] = '1';
        }
    }
    return s;
}

Bits bits_from_string(const std::string &s) {
    Bits b(s.size());
    for (std::size_t k = 0; k < s.size(); k++) {
        if (s[k] != '0' && s[k] != '1') {
            throw std::invalid_argument("bitstring must contain only 0 and 1");
        }
        b[k] = s[k] == '1';
    }
    return b;
}

double GateOutputDistribution::prob_of(const Bits &y) const {
    if (y.size() != p.size()) {
        throw std::invalid_argument("prob_of: width mismatch");
    }
    bool zero = true;
    double bern = 1.0;
    for (std::size_t j = 0; j < p.size(); j++) {
        zero = zero && !y[j];
        bern *= y[j] ? p[j] : 1.0 - p[j];
    }
    return zero ? all_zeros_prob : 4.0 * zero_weight * bern;
}

GateOutputDistribution exact_rtensor_distribution(const RTensorGate &g) {
    const std::size_t k = g.factors.size();
    if (k == 0) {
        throw std::invalid_argument("exact_rtensor_distribution: gate has no factors");
    }
    if (k > kMaxEnumerationArity) {
        throw std::invalid_argument("exact_rtensor_distribution: arity " + std::to_string(k) +
                                    " too large for enumeration");
    }
    GateOutputDistribution d;
    for (const auto &f : g.factors) {
        d.qubits.push_back(f.qubit);
        const double p = std::min(1.0, f.state.p_one() / f.state.norm_sq());
        d.p.push_back(p);
        d.zero_weight *= 1.0 - p;
    }
    d.all_zeros_prob = (1.0 - 2.0 * d.zero_weight) * (1.0 - 2.0 * d.zero_weight);
    d.probs.assign(std::uint64_t{1} << k, 0.0);
    Bits y(k);
    for (std::uint64_t o = 0; o < d.probs.size(); o++) {
        for (std::size_t j = 0; j < k; j++) {
            y[j] = (o >> (k - 1 - j)) & 1;
        }
        d.probs[o] = d.prob_of(y);
    }
    return d;
}

Bits sample_rtensor(const RTensorGate &g, Rng &rng) {
    const std::size_t k = g.factors.size();
    std::vector<double> p(k);
    double zero_weight = 1.0;
    for (std::size_t j = 0; j < k; j++) {
        p[j] = std::min(1.0, g.factors[j].state.p_one());
        zero_weight *= 1.0 - p[j];
    }
    Bits y(k, 0);
    if (k == 0) {
        return y;
    }
    if (zero_weight <= 0.25) {
        if (rng.uniform() < 1.0 - 4.0 * zero_weight) {
            return y;
        }
        for (std::size_t j = 0; j < k; j++) {
            y[j] = rng.bernoulli(p[j]);
        }
        return y;
    }
    const double all_zero = (1.0 - 2.0 * zero_weight) * (1.0 - 2.0 * zero_weight);
    if (rng.uniform() < all_zero) {
        return y;
    }
    // Nonzero sector: Bernoulli vector conditioned on having a one. Draw the
    // first one's position, then the rest freely.
    const double nonzero = 1.0 - zero_weight;
    const double u = rng.uniform() * nonzero;
    double prefix = 1.0;
    double acc = 0.0;
    std::size_t first = k - 1;
    for (std::size_t j = 0; j < k; j++) {
        acc += prefix * p[j];
        if (u < acc) {
            first = j;
            break;
        }
        prefix *= 1.0 - p[j];
    }
    while (p[first] == 0.0 && first > 0) {
        first--;
    }
    y[first] = 1;
    for (std::size_t j = first + 1; j < k; j++) {
        y[j] = rng.bernoulli(p[j]);
    }
    return y;
}

void run_classical_in_place(const Circuit &c, Bits &x) {
    if (x.size() != c.num_qubits()) {
        throw std::invalid_argument("run_classical: input width does not match the circuit");
    }
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer.gates) {
            if (const auto *t = std::get_if<ToffoliGate>(&g)) {
                bool all = true;
                for (Qubit q : t->controls) {
                    all = all && x[q];
                }
                x[t->target] ^= static_cast<std::uint8_t>(all);
            } else if (const auto *o = std::get_if<OrGate>(&g)) {
                bool any = false;
                for (Qubit q : o->controls) {
                    any = any || x[q];
                }
                x[o->target] ^= static_cast<std::uint8_t>(any);
            } else if (const auto *f = std::get_if<FanoutGate>(&g)) {
                if (x[f->source]) {
                    for (Qubit q : f->targets) {
                        x[q] ^= 1;
                    }
                }
            } else if (const auto *u = std::get_if<OneQubitGate>(&g)) {
                if (mat2_approx_equal(u->matrix, mat2_x(), kStructuralTol)) {
                    x[u->qubit] ^= 1;
                } else if (!mat2_approx_equal(u->matrix, mat2_identity(), kStructuralTol)) {
                    throw std::invalid_argument("run_classical: non-classical one-qubit gate");
                }
            } else {
                throw std::invalid_argument("run_classical: R-tensor gate in a classical circuit");
            }
        }
    }
}

Bits run_classical(const Circuit &c, const Bits &x) {
    Bits y = x;
    run_classical_in_place(c, y);
    return y;
}

namespace {

void merge_into(std::vector<Qubit> &dst, const std::vector<Qubit> &src) {
    std::vector<Qubit> out;
    out.reserve(dst.size() + src.size());
    std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(out));
    dst.swap(out);
}

/// deps[q] = inputs that may reach qubit q.
std::vector<std::vector<Qubit>> backward_cones(const Circuit &c) {
    std::vector<std::vector<Qubit>> deps(c.num_qubits());
    for (Qubit q = 0; q < c.num_qubits(); q++) {
        deps[q] = {q};
    }
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer.gates) {
            if (!is_classical_gate(g)) {
                throw std::invalid_argument("influences: circuit is not purely classical");
            }
            if (const auto *t = std::get_if<ToffoliGate>(&g)) {
                for (Qubit q : t->controls) {
                    merge_into(deps[t->target], deps[q]);
                }
            } else if (const auto *o = std::get_if<OrGate>(&g)) {
                for (Qubit q : o->controls) {
                    merge_into(deps[o->target], deps[q]);
                }
            } else if (const auto *f = std::get_if<FanoutGate>(&g)) {
                for (Qubit q : f->targets) {
                    merge_into(deps[q], deps[f->source]);
                }
            }
        }
    }
    return deps;
}

InfluenceMap invert(const std::vector<std::vector<Qubit>> &deps) {
    InfluenceMap inf(deps.size());
    for (Qubit k = 0; k < deps.size(); k++) {
        for (Qubit j : deps[k]) {
            inf[j].push_back(k);
        }
    }
    return inf;
}

}  // namespace

InfluenceMap influences_structural(const Circuit &c) { return invert(backward_cones(c)); }

InfluenceMap influences_brute_force(const Circuit &c) {
    const std::size_t n = c.num_qubits();
    if (n > 24) {
        throw std::invalid_argument("influences_brute_force: width above 24");
    }
    const auto cones = backward_cones(c);
    std::vector<std::vector<Qubit>> exact(n);
    Bits x(n);
    for (Qubit k = 0; k < n; k++) {
        const auto &cone = cones[k];
        const std::size_t w = cone.size();
        std::vector<std::uint8_t> value(std::size_t{1} << w);
        for (std::uint64_t a = 0; a < value.size(); a++) {
            std::fill(x.begin(), x.end(), 0);
            for (std::size_t i = 0; i < w; i++) {
                x[cone[i]] = (a >> i) & 1;
            }
            run_classical_in_place(c, x);
            value[a] = x[k];
        }
        for (std::size_t i = 0; i < w; i++) {
            bool flips = false;
            for (std::uint64_t a = 0; a < value.size() && !flips; a++) {
                flips = value[a] != value[a ^ (std::uint64_t{1} << i)];
            }
            if (flips) {
                exact[k].push_back(cone[i]);
            }
        }
    }
    return invert(exact);
}

std::uint64_t read_bound(const Circuit &c) {
    std::uint64_t r = 1;
    for (const auto &layer : c.layers()) {
        std::uint64_t growth = 1;
        for (const auto &g : layer.gates) {
            if (!is_multi_qubit(g)) {
                continue;
            }
            if (const auto *f = std::get_if<FanoutGate>(&g)) {
                growth = std::max<std::uint64_t>(growth, f->targets.size() + 1);
            } else {
                growth = std::max<std::uint64_t>(growth, 2);
            }
        }
        r = (r > (std::uint64_t{1} << 62) / growth) ? (std::uint64_t{1} << 62) : r * growth;
    }
    return r;
}

MostlyClassicalSampler::MostlyClassicalSampler(const Circuit &c, SamplerKind kind)
    : num_qubits_(c.num_qubits()), targets_(c.target_list()), cls_(classify(c)), kind_(kind) {
    if (!cls_.mostly_classical) {
        throw std::invalid_argument("sampler: circuit is not mostly classical (" + cls_.reason + ")");
    }
    read_r_ = read_bound(cls_.classical);
    if (kind_ != SamplerKind::kAppendixB) {
        return;
    }
    const auto inf = influences_structural(cls_.classical);
    std::vector<int> target_pos(num_qubits_, -1);
    for (std::size_t t = 0; t < targets_.size(); t++) {
        target_pos[targets_[t]] = static_cast<int>(t);
    }
    const std::size_t leaf = std::min<std::uint64_t>(read_r_, targets_.size());
    for (const auto &g : cls_.first.gates) {
        const auto *r = std::get_if<RTensorGate>(&g);
        if (r == nullptr || r->factors.size() < 2) {
            b_index_.push_back(-1);
            continue;
        }
        std::vector<std::vector<std::size_t>> influenced;
        for (const auto &f : r->factors) {
            std::vector<std::size_t> s;
            for (Qubit k : inf[f.qubit]) {
                if (target_pos[k] >= 0) {
                    s.push_back(static_cast<std::size_t>(target_pos[k]));
                }
            }
            std::sort(s.begin(), s.end());
            influenced.push_back(std::move(s));
        }
        b_index_.push_back(static_cast<int>(b_samplers_.size()));
        b_samplers_.emplace_back(*r, build_tau_tree(influenced, targets_.size(), leaf));
    }
}

Bits MostlyClassicalSampler::sample(Rng &rng) const {
    Bits x(num_qubits_, 0);
    for (std::size_t gi = 0; gi < cls_.first.gates.size(); gi++) {
        const Gate &g = cls_.first.gates[gi];
        if (!is_multi_qubit(g)) {
            const Mat2 m = one_qubit_matrix(g);
            x[gate_support(g).front()] = rng.bernoulli(std::norm(m[2]));
            continue;
        }
        const auto &r = std::get<RTensorGate>(g);
        const Bits y = (kind_ == SamplerKind::kAppendixB && b_index_[gi] >= 0) ? b_samplers_[b_index_[gi]].sample(rng)
                                                                                : sample_rtensor(r, rng);
        for (std::size_t j = 0; j < y.size(); j++) {
            x[r.factors[j].qubit] = y[j];
        }
    }
    run_classical_in_place(cls_.classical, x);
    Bits out(targets_.size());
    for (std::size_t t = 0; t < targets_.size(); t++) {
        out[t] = x[targets_[t]];
    }
    return out;
}

Bits sample_mostly_classical(const Circuit &c, Rng &rng, SamplerKind kind) {
    return MostlyClassicalSampler(c, kind).sample(rng);
}

std::vector<double> empirical_target_law(const Circuit &c, std::uint64_t draws, std::uint64_t seed,
                                         SamplerKind kind) {
    const MostlyClassicalSampler sampler(c, kind);
    const std::size_t w = sampler.targets().size();
    if (w > 24) {
        throw std::invalid_argument("empirical_target_law: more than 24 targets");
    }
    std::vector<std::uint32_t> outcome(draws);
    const std::int64_t total = static_cast<std::int64_t>(draws);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < total; t++) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const Bits y = sampler.sample(rng);
        std::uint32_t o = 0;
        for (std::size_t k = 0; k < w; k++) {
            o = (o << 1) | y[k];
        }
        outcome[t] = o;
    }
    std::vector<double> law(std::size_t{1} << w, 0.0);
    for (std::uint32_t o : outcome) {
        law[o] += 1.0;
    }
    for (double &v : law) {
        v /= static_cast<double>(draws);
    }
    return law;
}

double total_variation(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("total_variation: size mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); i++) {
        s += std::abs(a[i] - b[i]);
    }
    return 0.5 * s;
}

HammingStats hamming_stats(const Circuit &c, std::uint64_t trials, std::uint64_t seed, SamplerKind kind,
                           bool keep_samples, std::vector<double> epsilons) {
    if (trials == 0) {
        throw std::invalid_argument("hamming_stats: need at least one trial");
    }
    const MostlyClassicalSampler sampler(c, kind);
    HammingStats st;
    st.n = sampler.targets().size();
    st.trials = trials;
    st.r = std::max<std::uint64_t>(1, std::min<std::uint64_t>(sampler.read_parameter(), st.n));
    st.weights.assign(trials, 0);
    if (keep_samples) {
        st.samples.assign(trials, Bits{});
    }
    const std::int64_t total = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < total; t++) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        Bits y = sampler.sample(rng);
        std::uint32_t w = 0;
        for (auto b : y) {
            w += b;
        }
        st.weights[t] = w;
        if (keep_samples) {
            st.samples[t] = std::move(y);
        }
    }
    double sum = 0.0;
    for (auto w : st.weights) {
        sum += w;
    }
    st.mean = sum / static_cast<double>(trials);
    double sq = 0.0;
    for (auto w : st.weights) {
        sq += (w - st.mean) * (w - st.mean);
    }
    st.variance = sq / static_cast<double>(trials);
    const double n = static_cast<double>(st.n);
    for (double eps : epsilons) {
        TailRow row;
        row.epsilon = eps;
        row.bound = std::exp(-2.0 * eps * eps * n / static_cast<double>(st.r));
        row.slack = 3.0 * std::sqrt(row.bound * (1.0 - row.bound) / static_cast<double>(trials));
        std::uint64_t hi = 0, lo = 0;
        for (auto w : st.weights) {
            hi += w >= st.mean + eps * n;
            lo += w <= st.mean - eps * n;
        }
        row.upper = static_cast<double>(hi) / static_cast<double>(trials);
        row.lower = static_cast<double>(lo) / static_cast<double>(trials);
        row.holds = row.upper <= row.bound + row.slack && row.lower <= row.bound + row.slack;
        st.tails.push_back(row);
    }
    return st;
}

}  // namespace qacnek
