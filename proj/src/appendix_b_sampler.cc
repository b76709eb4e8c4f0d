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

// Factorized sampler for one reflection R_chi |0...0>.
//
// With p_j = |<1|chi_j>|^2 and P = prod (1 - p_j), the output is
// (B and X_j)_j where B ~ Bern(4P - 4P^2) and X is a Bernoulli(p) vector
// conditioned to be nonzero. X is realized through R_j (1 w.p. 1 - p_j, else
// uniform on [0,1)) conditioned on min R < 1:
//   J = argmin R, drawn by walking highlighted edges of the tau tree,
//   M_J = min R, with density proportional to prod_{i != J} (1 - p_i r),
//   X_j = 1 for j = J, else S_j <= P(R_j < 1 | R_j > M_J) = p_j (1 - M_J) / (1 - p_j M_J).

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qacnek/classical_sim.h"

namespace qacnek {

namespace {

constexpr std::uint64_t kRankCap = std::uint64_t{1} << 62;

std::vector<double> poly_mul_linear(const std::vector<double> &a, double slope) {
    // a(r) * (1 - slope r)
    std::vector<double> out(a.size() + 1, 0.0);
    for (std::size_t k = 0; k < a.size(); k++) {
        out[k] += a[k];
        out[k + 1] -= slope * a[k];
    }
    return out;
}

std::vector<double> antiderivative(const std::vector<double> &a) {
    std::vector<double> out(a.size() + 1, 0.0);
    for (std::size_t k = 0; k < a.size(); k++) {
        out[k + 1] = a[k] / static_cast<double>(k + 1);
    }
    return out;
}

double poly_eval(const std::vector<double> &a, double r) {
    double v = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) {
        v = v * r + a[k];
    }
    return v;
}

int ceil_log2(std::uint64_t x) {
    int d = 0;
    while ((std::uint64_t{1} << d) < x) {
        d++;
    }
    return d;
}

}  // namespace

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 v = 1;
    for (std::uint64_t i = 1; i <= k; i++) {
        v = v * (n - k + i) / i;
        if (v > kRankCap) {
            return kRankCap;
        }
    }
    return static_cast<std::uint64_t>(v);
}

std::uint64_t combination_rank(const std::vector<std::size_t> &sorted_set) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < sorted_set.size(); i++) {
        rank += binomial_capped(sorted_set[i], i + 1);
    }
    return rank;
}

TauTree build_tau_tree(const std::vector<std::vector<std::size_t>> &influenced, std::size_t num_targets,
                       std::size_t leaf_set_size) {
    if (leaf_set_size == 0 || leaf_set_size > num_targets) {
        throw std::invalid_argument("build_tau_tree: leaf set size must be in 1..num_targets");
    }
    TauTree t;
    t.num_targets = num_targets;
    t.leaf_set_size = leaf_set_size;
    t.num_leaves = binomial_capped(num_targets, leaf_set_size);
    if (t.num_leaves >= kRankCap) {
        throw std::invalid_argument("build_tau_tree: too many leaves for 62-bit ranks");
    }
    t.depth = ceil_log2(t.num_leaves);
    for (const auto &inf : influenced) {
        if (inf.size() > leaf_set_size) {
            throw std::invalid_argument("build_tau_tree: a factor influences more targets than the leaf set size");
        }
        std::vector<bool> in(num_targets, false);
        for (std::size_t k : inf) {
            if (k >= num_targets) {
                throw std::out_of_range("build_tau_tree: influenced target out of range");
            }
            in[k] = true;
        }
        std::vector<std::size_t> set(inf.begin(), inf.end());
        for (std::size_t k = 0; k < num_targets && set.size() < leaf_set_size; k++) {
            if (!in[k]) {
                set.push_back(k);
            }
        }
        std::sort(set.begin(), set.end());
        t.leaf_of.push_back(combination_rank(set));
        t.leaf_sets.push_back(std::move(set));
    }
    return t;
}

TauTree identity_tau_tree(std::size_t arity) {
    std::vector<std::vector<std::size_t>> inf(arity);
    for (std::size_t j = 0; j < arity; j++) {
        inf[j] = {j};
    }
    return build_tau_tree(inf, arity, 1);
}

AppendixBSampler::AppendixBSampler(const RTensorGate &g, TauTree tree)
    : arity_(g.factors.size()), tree_(std::move(tree)) {
    if (arity_ == 0) {
        throw std::invalid_argument("appendix-b sampler: gate has no factors");
    }
    if (arity_ > 12) {
        throw std::invalid_argument("appendix-b sampler: arity above 12");
    }
    if (tree_.leaf_of.size() != arity_) {
        throw std::invalid_argument("appendix-b sampler: tree does not match the gate arity");
    }
    double zero_weight = 1.0;
    for (std::size_t j = 0; j < arity_; j++) {
        const double p = std::min(1.0, g.factors[j].state.p_one());
        if (p > 0.0) {
            kept_.push_back(j);
            p_.push_back(p);
            zero_weight *= 1.0 - p;
        }
    }
    b_prob_ = 4.0 * zero_weight - 4.0 * zero_weight * zero_weight;
    j_law_.assign(arity_, 0.0);
    if (kept_.size() < 2) {
        return;
    }
    std::vector<double> weight(kept_.size());
    double z = 0.0;
    for (std::size_t a = 0; a < kept_.size(); a++) {
        std::vector<double> poly{1.0};
        for (std::size_t b = 0; b < kept_.size(); b++) {
            if (b != a) {
                poly = poly_mul_linear(poly, p_[b]);
            }
        }
        m_poly_.push_back(antiderivative(poly));
        m_norm_.push_back(poly_eval(m_poly_.back(), 1.0));
        weight[a] = p_[a] * m_norm_.back();
        z += weight[a];
    }
    level_prob_.assign(tree_.depth + 1, {});
    for (std::size_t a = 0; a < kept_.size(); a++) {
        const std::size_t j = kept_[a];
        j_law_[j] = weight[a] / z;
        const std::uint64_t leaf = tree_.leaf_of[j];
        for (int k = 0; k <= tree_.depth; k++) {
            level_prob_[k][leaf >> (tree_.depth - k)] += j_law_[j];
        }
        leaf_factors_[leaf].push_back(j);
    }
}

double AppendixBSampler::m_cdf(std::size_t kept_pos, double r) const {
    return poly_eval(m_poly_.at(kept_pos), r) / m_norm_.at(kept_pos);
}

Bits AppendixBSampler::sample(Rng &rng, SamplerTrace *trace) const {
    Bits y(arity_, 0);
    SamplerTrace local;
    SamplerTrace &tr = trace ? *trace : local;
    tr = SamplerTrace{};
    tr.kept = kept_;
    if (kept_.empty()) {
        return y;
    }
    if (kept_.size() == 1) {
        // Effectively a one-qubit reflection: Bern(|<1|R_chi|0>|^2) = Bern(4p(1-p)).
        tr.single_qubit = true;
        const double p = p_[0];
        y[kept_[0]] = rng.bernoulli(4.0 * p * (1.0 - p));
        tr.B = y[kept_[0]];
        tr.J = kept_[0];
        return y;
    }
    tr.B = rng.bernoulli(b_prob_);

    // Highlight one child edge out of every node the argmin can reach.
    for (int k = 0; k < tree_.depth; k++) {
        const auto &below = level_prob_[k + 1];
        for (const auto &[prefix, prob] : level_prob_[k]) {
            if (prob <= 0.0) {
                continue;
            }
            const auto it = below.find(prefix << 1);
            const double left = it == below.end() ? 0.0 : it->second;
            const std::uint64_t child = (rng.uniform() * prob < left) ? (prefix << 1) : ((prefix << 1) | 1);
            tr.highlighted.push_back({k, prefix, child});
        }
    }
    for (const auto &[leaf, factors] : leaf_factors_) {
        double total = 0.0;
        for (std::size_t j : factors) {
            total += j_law_[j];
        }
        const double u = rng.uniform() * total;
        double acc = 0.0;
        std::size_t pick = factors.back();
        for (std::size_t j : factors) {
            acc += j_law_[j];
            if (u < acc) {
                pick = j;
                break;
            }
        }
        tr.highlighted.push_back({tree_.depth, leaf, pick});
    }

    // Follow the highlighted path from the root.
    std::uint64_t node = 0;
    std::size_t e = 0;
    for (int k = 0; k <= tree_.depth; k++) {
        while (e < tr.highlighted.size() && !(tr.highlighted[e].level == k && tr.highlighted[e].parent == node)) {
            e++;
        }
        if (e == tr.highlighted.size()) {
            throw std::logic_error("appendix-b sampler: highlighted path is broken");
        }
        tr.path.push_back(tr.highlighted[e]);
        node = tr.highlighted[e].child;
    }
    tr.J = static_cast<std::size_t>(node);

    tr.M.resize(kept_.size());
    for (std::size_t a = 0; a < kept_.size(); a++) {
        const double u = rng.uniform();
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; it++) {
            const double mid = 0.5 * (lo + hi);
            (m_cdf(a, mid) < u ? lo : hi) = mid;
        }
        tr.M[a] = 0.5 * (lo + hi);
    }
    tr.S.resize(kept_.size());
    for (auto &s : tr.S) {
        s = rng.uniform();
    }

    if (!tr.B) {
        return y;
    }
    const std::size_t jpos = static_cast<std::size_t>(std::find(kept_.begin(), kept_.end(), tr.J) - kept_.begin());
    const double mu = tr.M[jpos];
    for (std::size_t a = 0; a < kept_.size(); a++) {
        const double survive = p_[a] * (1.0 - mu) / (1.0 - p_[a] * mu);
        y[kept_[a]] = kept_[a] == tr.J || tr.S[a] <= survive;
    }
    return y;
}

AppendixBResult appendix_b_sample_gate(const RTensorGate &g, const TauTree &tree, Rng &rng) {
    const AppendixBSampler sampler(g, tree);
    AppendixBResult r;
    r.bits = sampler.sample(rng, &r.trace);
    return r;
}

}  // namespace qacnek
