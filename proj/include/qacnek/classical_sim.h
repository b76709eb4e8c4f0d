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

// Classical simulation of standard-basis measurements of C L |0...0>, where L
// is one layer of reflections / one-qubit gates and C is classical.

#ifndef QACNEK_CLASSICAL_SIM_H
#define QACNEK_CLASSICAL_SIM_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qacnek/circuit.h"
#include "qacnek/nekomata.h"
#include "qacnek/rng.h"

namespace qacnek {

using Bits = std::vector<std::uint8_t>;

std::string bits_to_string(const Bits &b);
Bits bits_from_string(const std::string &s);

/// Law of a standard-basis measurement of R_chi |0...0> over the gate's
/// factor qubits (factor order, first factor most significant).
struct GateOutputDistribution {
    std::vector<Qubit> qubits;
    std::vector<double> p;          // |<1|chi_j>|^2 per factor
    double zero_weight = 1.0;       // prod (1 - p_j)
    double all_zeros_prob = 1.0;    // (1 - 2 zero_weight)^2
    std::vector<double> probs;      // full table, 2^k entries

    /// 4 zero_weight prod_j Bern(p_j)(y_j) for y != 0.
    double prob_of(const Bits &y) const;
};

inline constexpr std::size_t kMaxEnumerationArity = 20;

GateOutputDistribution exact_rtensor_distribution(const RTensorGate &g);

/// One draw from the exact law. Nice gates (prod (1 - p_j) <= 1/4) use the
/// convex combination "all zeros w.p. 1 - 4P, else independent Bernoullis";
/// other gates draw the nonzero sector by inverse transform on the position
/// of its first one.
Bits sample_rtensor(const RTensorGate &g, Rng &rng);

/// Evaluates a classical circuit on a bitstring in place. Throws on a
/// non-classical gate.
void run_classical_in_place(const Circuit &c, Bits &x);
Bits run_classical(const Circuit &c, const Bits &x);

/// influence[j] = output bits that input bit j can flip.
using InfluenceMap = std::vector<std::vector<Qubit>>;

/// Gate-connectivity over-approximation.
InfluenceMap influences_structural(const Circuit &c);
/// Exact, by enumerating the backward light cone of each output (<= 24 bits).
InfluenceMap influences_brute_force(const Circuit &c);

/// Upper bound on influence-set sizes: the product over multi-qubit layers of
/// the largest per-layer growth (2 for Toffoli/OR, k+1 for k-target fanout).
/// Equals 2^depth for Toffoli/OR circuits.
std::uint64_t read_bound(const Circuit &c);

// ---- factorized tree sampler ----

/// Binary tree whose leaves are the size-`leaf_set_size` subsets of the
/// targets (ranked in the combinatorial number system, so only the leaves in
/// use are materialized). Factor j hangs under leaf_of[j].
struct TauTree {
    std::size_t num_targets = 0;
    std::size_t leaf_set_size = 0;
    std::uint64_t num_leaves = 0;
    int depth = 0;                                // ceil(log2 num_leaves)
    std::vector<std::uint64_t> leaf_of;           // per factor
    std::vector<std::vector<std::size_t>> leaf_sets;  // per factor, sorted target positions
};

/// influenced[j] lists target positions influenced by factor j; every set is
/// padded with the lowest-index targets up to leaf_set_size.
TauTree build_tau_tree(const std::vector<std::vector<std::size_t>> &influenced, std::size_t num_targets,
                       std::size_t leaf_set_size);
/// Factor j influences only target j.
TauTree identity_tau_tree(std::size_t arity);

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k);
std::uint64_t combination_rank(const std::vector<std::size_t> &sorted_set);

struct HighlightedEdge {
    int level = 0;               // depth of the parent node
    std::uint64_t parent = 0;    // node prefix at that depth
    std::uint64_t child = 0;     // child prefix (or factor index below a leaf)
};

struct SamplerTrace {
    bool single_qubit = false;
    std::vector<std::size_t> kept;   // factor indices with p_j > 0
    bool B = false;
    std::vector<HighlightedEdge> highlighted;  // sorted by level
    std::vector<HighlightedEdge> path;         // root-to-factor path
    std::size_t J = 0;                         // factor index
    std::vector<double> M;                     // per kept factor
    std::vector<double> S;                     // per kept factor
};

class AppendixBSampler {
   public:
    AppendixBSampler(const RTensorGate &g, TauTree tree);

    /// Output bits in factor order.
    Bits sample(Rng &rng, SamplerTrace *trace = nullptr) const;

    /// P(argmin R = j | min R < 1) per factor (0 for elided factors).
    const std::vector<double> &j_law() const { return j_law_; }
    /// CDF of M_j at r (kept factor position).
    double m_cdf(std::size_t kept_pos, double r) const;

   private:
    std::size_t arity_ = 0;
    std::vector<std::size_t> kept_;
    std::vector<double> p_;        // per kept factor
    double b_prob_ = 0.0;
    std::vector<double> j_law_;    // per factor
    TauTree tree_;
    std::vector<std::map<std::uint64_t, double>> level_prob_;  // depth 0..D
    std::map<std::uint64_t, std::vector<std::size_t>> leaf_factors_;
    std::vector<std::vector<double>> m_poly_;   // per kept factor, antiderivative coefficients
    std::vector<double> m_norm_;
};

struct AppendixBResult {
    Bits bits;
    SamplerTrace trace;
};

AppendixBResult appendix_b_sample_gate(const RTensorGate &g, const TauTree &tree, Rng &rng);

// ---- whole-circuit sampling ----

enum class SamplerKind { kDirect, kAppendixB };

class MostlyClassicalSampler {
   public:
    MostlyClassicalSampler(const Circuit &c, SamplerKind kind = SamplerKind::kDirect);

    /// Target bits of one measurement of C L |0...0>.
    Bits sample(Rng &rng) const;
    const ClassificationResult &classification() const { return cls_; }
    const std::vector<Qubit> &targets() const { return targets_; }
    std::uint64_t read_parameter() const { return read_r_; }

   private:
    std::size_t num_qubits_;
    std::vector<Qubit> targets_;
    ClassificationResult cls_;
    SamplerKind kind_;
    std::uint64_t read_r_ = 1;
    std::vector<AppendixBSampler> b_samplers_;  // per first-layer gate (appendix-b mode)
    std::vector<int> b_index_;
};

Bits sample_mostly_classical(const Circuit &c, Rng &rng, SamplerKind kind = SamplerKind::kDirect);

/// Empirical law over target outcomes (first target most significant).
std::vector<double> empirical_target_law(const Circuit &c, std::uint64_t draws, std::uint64_t seed,
                                         SamplerKind kind = SamplerKind::kDirect);

double total_variation(const std::vector<double> &a, const std::vector<double> &b);

struct TailRow {
    double epsilon = 0.0;
    double bound = 0.0;           // exp(-2 eps^2 n / r)
    double slack = 0.0;           // 3 sqrt(bound (1 - bound) / trials)
    double upper = 0.0;           // P(W >= mean + eps n)
    double lower = 0.0;           // P(W <= mean - eps n)
    bool holds = false;
};

struct HammingStats {
    std::size_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t r = 1;
    double mean = 0.0;
    double variance = 0.0;
    std::vector<TailRow> tails;
    std::vector<std::uint32_t> weights;  // per trial
    std::vector<Bits> samples;           // per trial, kept only on request
};

HammingStats hamming_stats(const Circuit &c, std::uint64_t trials, std::uint64_t seed,
                           SamplerKind kind = SamplerKind::kDirect, bool keep_samples = false,
                           std::vector<double> epsilons = {0.05, 0.1, 0.2});

}  // namespace qacnek

#endif
