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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qacnek/classical_sim.h"
#include "qacnek/nekomata.h"
#include "qacnek/state_vector.h"
#include "qacnek/transforms.h"
#include "test_util.h"

namespace qacnek {
namespace {

constexpr std::uint64_t kDraws = 100000;

// Law of measuring every qubit of R_chi |0..0> by state-vector simulation.
std::vector<double> state_law(const RTensorGate &g) {
    const std::size_t k = g.factors.size();
    Circuit c(k);
    c.append_layer({Gate{g}});
    std::vector<Qubit> all(k);
    for (std::size_t i = 0; i < k; i++) {
        all[i] = static_cast<Qubit>(i);
    }
    return measurement_distribution(run(c, StateVector(k)), all).probs;
}

std::vector<double> target_law(const Circuit &c) {
    return measurement_distribution(run(c, StateVector(c.num_qubits())), *c.targets()).probs;
}

template <class F>
std::vector<double> histogram(std::size_t width, std::uint64_t draws, F draw) {
    std::vector<double> h(std::size_t{1} << width, 0.0);
    for (std::uint64_t i = 0; i < draws; i++) {
        const Bits b = draw();
        std::size_t idx = 0;
        for (auto v : b) {
            idx = (idx << 1) | v;
        }
        h[idx] += 1.0;
    }
    for (auto &x : h) {
        x /= static_cast<double>(draws);
    }
    return h;
}

RTensorGate rtensor(std::vector<LocalState> states) {
    std::vector<RTensorFactor> fs;
    for (std::size_t j = 0; j < states.size(); j++) {
        fs.push_back({static_cast<Qubit>(j), states[j]});
    }
    return std::get<RTensorGate>(make_rtensor(std::move(fs)));
}

// 3-sigma band of a frequency around p.
double band(double p, std::uint64_t draws) { return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(draws)) + 1e-12; }

TEST(ExactDistribution, Examples) {
    const auto z = exact_rtensor_distribution(rtensor({LocalState::one()}));
    EXPECT_NEAR(z.probs[0], 1.0, 1e-15);
    const auto cz = exact_rtensor_distribution(rtensor({LocalState::one(), LocalState::one()}));
    EXPECT_NEAR(cz.probs[0], 1.0, 1e-15);
    const auto pp = exact_rtensor_distribution(rtensor({LocalState::plus(), LocalState::plus()}));
    for (double p : pp.probs) {
        EXPECT_NEAR(p, 0.25, 1e-12);
    }
}

TEST(ExactDistribution, MatchesStateVector) {
    Rng rng(2);
    for (int i = 0; i < 60; i++) {
        const auto g = testing::random_rtensor(1 + rng.below(6), rng);
        const auto got = exact_rtensor_distribution(g);
        const auto want = state_law(g);
        double mass = 0.0;
        for (std::size_t y = 0; y < want.size(); y++) {
            EXPECT_NEAR(got.probs[y], want[y], 1e-10);
            mass += got.probs[y];
        }
        EXPECT_NEAR(mass, 1.0, 1e-12);
    }
}

TEST(SampleRtensor, DegenerateAndUniform) {
    Rng rng(4);
    const auto cz = rtensor({LocalState::one(), LocalState::one()});
    for (int i = 0; i < 1000; i++) {
        EXPECT_EQ(sample_rtensor(cz, rng), (Bits{0, 0}));
    }
    const auto pp = rtensor({LocalState::plus(), LocalState::plus()});
    const auto h = histogram(2, kDraws, [&] { return sample_rtensor(pp, rng); });
    EXPECT_LE(total_variation(h, std::vector<double>(4, 0.25)), 0.02);
}

TEST(SampleRtensor, NiceBoundaryGate) {
    // prod (1 - p_j) = 1/4 exactly.
    const auto g = rtensor({LocalState::real_weighted(0.5), LocalState::real_weighted(0.5)});
    const auto law = exact_rtensor_distribution(g);
    EXPECT_NEAR(law.zero_weight, 0.25, 1e-15);
    Rng rng(6);
    const auto h = histogram(2, kDraws, [&] { return sample_rtensor(g, rng); });
    for (std::size_t y = 0; y < 4; y++) {
        EXPECT_NEAR(h[y], law.probs[y], band(law.probs[y], kDraws));
    }
}

TEST(SampleRtensor, RandomGatesIncludingNonNice) {
    Rng rng(8);
    for (int i = 0; i < 12; i++) {
        const auto g = testing::random_rtensor(1 + rng.below(5), rng);
        const auto want = state_law(g);
        Rng draw(100 + static_cast<std::uint64_t>(i));
        const auto h = histogram(g.factors.size(), kDraws, [&] { return sample_rtensor(g, draw); });
        EXPECT_LE(total_variation(h, want), 0.02);
    }
}

TEST(RunClassical, Examples) {
    Circuit t(3);
    t.append_layer({make_toffoli({0, 1}, 2)});
    EXPECT_EQ(run_classical(t, bits_from_string("110")), bits_from_string("111"));
    Circuit o(3);
    o.append_layer({make_or({0, 1}, 2)});
    EXPECT_EQ(run_classical(o, bits_from_string("010")), bits_from_string("011"));
    EXPECT_EQ(run_classical(fanout_tree(8, 2), bits_from_string("10000000")), bits_from_string("11111111"));
    Circuit h(1);
    h.append_layer({make_h(0)});
    EXPECT_THROW(run_classical(h, bits_from_string("0")), std::invalid_argument);
}

TEST(RunClassical, AgreesWithStateVectorOnBasisStates) {
    Rng rng(10);
    for (int i = 0; i < 20; i++) {
        const Circuit r = testing::random_mostly_classical(7, 3, 1, rng);
        const Circuit c = classify(r).classical;
        const std::uint64_t x = rng.below(128);
        const Bits in = bits_from_string(outcome_bits(x, 7));
        const Bits out = run_classical(c, in);
        const auto s = run(c, StateVector::basis(7, x));
        EXPECT_NEAR(fidelity(s, StateVector::from_bits(bits_to_string(out))), 1.0, 1e-12);
    }
}

TEST(MostlyClassical, CzThenCnotIsDeterministic) {
    Circuit c(2);
    c.append_layer({make_cz(0, 1)});
    c.append_layer({make_cnot(0, 1)});
    c.set_targets(std::vector<Qubit>{0, 1});
    Rng rng(12);
    for (int i = 0; i < 1000; i++) {
        EXPECT_EQ(sample_mostly_classical(c, rng), (Bits{0, 0}));
    }
}

TEST(MostlyClassical, Depth2NekomataAllZerosFrequency) {
    const Circuit c = build_depth2_nekomata(2, 3, solve_delta(2, 3));
    const double exact = target_law(c)[0];
    for (auto kind : {SamplerKind::kDirect, SamplerKind::kAppendixB}) {
        const auto h = empirical_target_law(c, kDraws, 99, kind);
        EXPECT_NEAR(h[0], exact, band(exact, kDraws));
        EXPECT_NEAR(exact, 0.5, 1e-9);
    }
}

TEST(MostlyClassical, HadamardThenFanoutTreeIsCat) {
    const Circuit c = cat_from_restricted_fanout(fanout_tree(4, 2), 4);
    const auto h = empirical_target_law(c, kDraws, 5);
    EXPECT_NEAR(h[0], 0.5, band(0.5, kDraws));
    EXPECT_NEAR(h[15], 0.5, band(0.5, kDraws));
    EXPECT_NEAR(h[0] + h[15], 1.0, 1e-15);
}

TEST(MostlyClassical, RandomCircuitsMatchStateVector) {
    Rng rng(14);
    for (int i = 0; i < 10; i++) {
        const std::size_t n = 6 + rng.below(7);
        const Circuit c = testing::random_mostly_classical(n, 2, 1 + rng.below(4), rng, i % 2 == 0);
        const auto want = target_law(c);
        const auto cls = classify(c);
        EXPECT_LE(total_variation(empirical_target_law(c, kDraws, 1000 + i), want), 0.02);
        if (cls.nice) {
            EXPECT_LE(total_variation(empirical_target_law(c, kDraws, 2000 + i, SamplerKind::kAppendixB), want), 0.02);
        }
    }
}

TEST(MostlyClassical, RejectsQuantumTail) {
    Circuit c(2);
    c.append_layer({make_cnot(0, 1)});
    c.append_layer({make_h(0)});
    c.set_targets(std::vector<Qubit>{0});
    Rng rng(1);
    EXPECT_THROW(sample_mostly_classical(c, rng), std::invalid_argument);
}

bool contains(const std::vector<Qubit> &v, Qubit q) { return std::find(v.begin(), v.end(), q) != v.end(); }

TEST(Influences, Examples) {
    Circuit cnot(2);
    cnot.append_layer({make_cnot(0, 1)});
    const auto inf = influences_brute_force(cnot);
    EXPECT_EQ(inf[0], (std::vector<Qubit>{0, 1}));
    EXPECT_EQ(inf[1], (std::vector<Qubit>{1}));

    const Circuit id(3);
    const auto s = influences_structural(id);
    for (Qubit q = 0; q < 3; q++) {
        EXPECT_EQ(s[q], std::vector<Qubit>{q});
    }

    for (std::size_t d = 1; d <= 4; d++) {
        const std::size_t n = std::size_t{1} << d;
        const auto b = influences_brute_force(fanout_tree(n, 2));
        EXPECT_EQ(b[0].size(), n);
    }
}

TEST(Influences, BruteForceIsSubsetOfStructural) {
    Rng rng(16);
    for (int i = 0; i < 30; i++) {
        const Circuit c = classify(testing::random_mostly_classical(8, 1 + rng.below(3), 1, rng)).classical;
        const auto b = influences_brute_force(c);
        const auto s = influences_structural(c);
        const std::uint64_t cap = read_bound(c);
        EXPECT_EQ(cap, std::uint64_t{1} << circuit_depth(c));
        for (std::size_t j = 0; j < b.size(); j++) {
            for (Qubit q : b[j]) {
                EXPECT_TRUE(contains(s[j], q));
            }
            EXPECT_LE(s[j].size(), cap);
        }
    }
}

TEST(AppendixB, SingleQubitIsDirectBernoulli) {
    const auto g = rtensor({LocalState::real_weighted(0.3)});
    const auto law = exact_rtensor_distribution(g);
    Rng rng(18);
    const auto r = appendix_b_sample_gate(g, identity_tau_tree(1), rng);
    EXPECT_TRUE(r.trace.single_qubit);
    const AppendixBSampler s(g, identity_tau_tree(1));
    const auto h = histogram(1, kDraws, [&] { return s.sample(rng); });
    EXPECT_NEAR(h[1], law.probs[1], band(law.probs[1], kDraws));
    EXPECT_NEAR(law.probs[1], 4.0 * 0.7 * 0.3, 1e-12);
}

TEST(AppendixB, UniformGate) {
    const auto g = rtensor({LocalState::plus(), LocalState::plus()});
    const AppendixBSampler s(g, identity_tau_tree(2));
    Rng rng(20);
    const auto h = histogram(2, kDraws, [&] { return s.sample(rng); });
    EXPECT_LE(total_variation(h, std::vector<double>(4, 0.25)), 0.02);
}

TEST(AppendixB, FullyOneFactorsNeverFire) {
    const auto g = rtensor({LocalState::one(), LocalState::one()});
    Rng rng(22);
    for (int i = 0; i < 500; i++) {
        const auto r = appendix_b_sample_gate(g, identity_tau_tree(2), rng);
        EXPECT_FALSE(r.trace.B);
        EXPECT_EQ(r.bits, (Bits{0, 0}));
    }
}

TEST(AppendixB, AgreesWithDirectSampler) {
    Rng rng(24);
    for (int i = 0; i < 10; i++) {
        const auto g = testing::random_rtensor(2 + rng.below(5), rng);
        const std::size_t k = g.factors.size();
        const AppendixBSampler s(g, identity_tau_tree(k));
        Rng a(300 + static_cast<std::uint64_t>(i));
        Rng b(400 + static_cast<std::uint64_t>(i));
        const auto hb = histogram(k, kDraws, [&] { return s.sample(a); });
        const auto hd = histogram(k, kDraws, [&] { return sample_rtensor(g, b); });
        EXPECT_LE(total_variation(hb, state_law(g)), 0.02);
        EXPECT_LE(total_variation(hb, hd), 0.03);
    }
}

TEST(AppendixB, TraceHasOneRootToLeafPath) {
    Rng rng(26);
    const auto g = testing::random_rtensor(5, rng);
    std::vector<std::vector<std::size_t>> influenced = {{0, 1}, {1}, {2, 3}, {0}, {3}};
    const TauTree tree = build_tau_tree(influenced, 4, 2);
    EXPECT_EQ(tree.num_leaves, binomial_capped(4, 2));
    const AppendixBSampler s(g, tree);
    double mass = 0.0;
    for (double p : s.j_law()) {
        mass += p;
    }
    EXPECT_NEAR(mass, 1.0, 1e-12);
    for (int i = 0; i < 200; i++) {
        SamplerTrace tr;
        const Bits y = s.sample(rng, &tr);
        ASSERT_EQ(tr.path.size(), static_cast<std::size_t>(tree.depth) + 1);
        for (std::size_t k = 0; k < tr.path.size(); k++) {
            EXPECT_EQ(tr.path[k].level, static_cast<int>(k));
        }
        EXPECT_EQ(tr.path.back().parent, tree.leaf_of[tr.J]);
        if (tr.B) {
            EXPECT_EQ(y[tr.J], 1);
        } else {
            EXPECT_EQ(std::count(y.begin(), y.end(), 1), 0);
        }
    }
    const auto hb = histogram(5, kDraws, [&] { return s.sample(rng); });
    EXPECT_LE(total_variation(hb, state_law(g)), 0.02);
}

TEST(AppendixB, CombinationRank) {
    EXPECT_EQ(combination_rank({0, 1}), 0u);
    EXPECT_EQ(combination_rank({0, 2}), 1u);
    EXPECT_EQ(combination_rank({1, 2}), 2u);
    EXPECT_EQ(combination_rank({0, 3}), 3u);
    EXPECT_EQ(binomial_capped(50, 25), 126410606437752u);
}

TEST(Hamming, DeterministicCircuitHasZeroVariance) {
    Circuit c(4);
    c.append_layer({make_x(1)});
    c.append_layer({make_cnot(1, 2)});
    c.set_targets(std::vector<Qubit>{0, 1, 2, 3});
    const auto st = hamming_stats(c, 2000, 3);
    EXPECT_EQ(st.variance, 0.0);
    EXPECT_EQ(st.mean, 2.0);
}

TEST(Hamming, IndependentCoinsRespectTheTailBound) {
    const std::size_t n = 400;
    Circuit c(n);
    Layer hs;
    for (Qubit q = 0; q < n; q++) {
        hs.gates.push_back(make_h(q));
    }
    c.append_layer(std::move(hs));
    const auto st = hamming_stats(c, 20000, 7);
    EXPECT_EQ(st.r, 1u);
    EXPECT_NEAR(st.mean, 200.0, 1.0);
    for (const auto &row : st.tails) {
        EXPECT_TRUE(row.holds) << row.epsilon;
        if (row.epsilon == 0.1) {
            EXPECT_NEAR(row.bound, std::exp(-8.0), 1e-15);
        }
    }
}

TEST(Hamming, SerialAndParallelDrawsAgree) {
    const Circuit c = cat_from_restricted_fanout(fanout_tree(16, 2), 16);
    const auto a = hamming_stats(c, 3000, 11);
    const auto b = hamming_stats(c, 3000, 11);
    EXPECT_EQ(a.weights, b.weights);
    EXPECT_EQ(a.r, 16u);
    for (auto w : a.weights) {
        EXPECT_TRUE(w == 0 || w == 16);
    }
}

}  // namespace
}  // namespace qacnek
