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

#include <cmath>
#include <cstring>

#include "qacnek/kernels.h"
#include "qacnek/state_vector.h"
#include "test_util.h"

namespace qacnek {
namespace {

TEST(Kernels, EveryGateMatchesDenseDefinition) {
    Rng rng(21);
    for (int trial = 0; trial < 40; trial++) {
        const std::size_t n = 2 + rng.below(4);
        const auto qs = testing::shuffled(n, rng);
        const std::size_t k = 1 + rng.below(n);
        std::vector<Qubit> sup(qs.begin(), qs.begin() + static_cast<std::ptrdiff_t>(k));
        Gate g = testing::random_gate_on(sup, rng);
        if (trial % 5 == 0 && k >= 2) {
            g = make_fanout(sup[0], std::vector<Qubit>(sup.begin() + 1, sup.end()));
        }
        Circuit c(n);
        c.append_layer({g});
        const double diff = (unitary_matrix(c) - testing::dense_gate(g, n)).cwiseAbs().maxCoeff();
        EXPECT_LT(diff, 1e-12) << gate_kind_name(g);
    }
}

TEST(Kernels, SerialAndParallelAreBitIdentical) {
    Rng rng(5);
    for (int trial = 0; trial < 20; trial++) {
        const std::size_t n = 3 + rng.below(12);  // up to 14 qubits, past one reduction chunk
        const Circuit c = testing::random_qac_circuit(n, 3, rng);
        const StateVector in = StateVector::random(n, rng);
        const StateVector a = run(c, in);
        const StateVector b = run_serial(c, in);
        ASSERT_EQ(a.dimension(), b.dimension());
        EXPECT_EQ(std::memcmp(a.amplitudes().data(), b.amplitudes().data(), a.dimension() * sizeof(Complex)), 0);
        const Complex ip_p = kernels::parallel::inner_product(a.amplitudes(), in.amplitudes());
        const Complex ip_s = kernels::serial::inner_product(a.amplitudes(), in.amplitudes());
        EXPECT_EQ(ip_p, ip_s);
        EXPECT_EQ(kernels::parallel::norm_sq(a.amplitudes()), kernels::serial::norm_sq(a.amplitudes()));
    }
}

TEST(Kernels, BadQubitThrows) {
    std::vector<Complex> v(4, 0.0);
    v[0] = 1.0;
    EXPECT_THROW(kernels::apply_gate(v, 2, make_x(7)), std::out_of_range);
}

TEST(StateVector, ToffoliOnBasis) {
    const auto s = apply_gate(StateVector::from_bits("110"), make_toffoli({0, 1}, 2));
    EXPECT_NEAR(std::abs(s.amplitude(0b111)), 1.0, 1e-15);
}

TEST(StateVector, ReflectionAboutOneIsZ) {
    const Gate z = make_rtensor({{0, LocalState::one()}});
    EXPECT_NEAR(apply_gate(StateVector::from_bits("0"), z).amplitude(0).real(), 1.0, 1e-15);
    EXPECT_NEAR(apply_gate(StateVector::from_bits("1"), z).amplitude(1).real(), -1.0, 1e-15);
}

TEST(StateVector, ReflectionAboutPlusPlus) {
    const Gate g = make_rtensor({{0, LocalState::plus()}, {1, LocalState::plus()}});
    const auto s = apply_gate(StateVector(2), g);
    const double want[4] = {0.5, -0.5, -0.5, -0.5};
    for (int i = 0; i < 4; i++) {
        EXPECT_NEAR(s.amplitude(i).real(), want[i], 1e-15);
        EXPECT_NEAR(s.amplitude(i).imag(), 0.0, 1e-15);
    }
    const auto d = measurement_distribution(s, {0, 1});
    for (double p : d.probs) {
        EXPECT_NEAR(p, 0.25, 1e-15);
    }
}

TEST(StateVector, Fig1ParityOnBasis) {
    Circuit c(4);
    c.append_layer({make_cnot(1, 0)});
    c.append_layer({make_cnot(2, 0)});
    c.append_layer({make_cnot(3, 0)});
    const auto s = run(c, StateVector::from_bits("0111"));
    EXPECT_NEAR(std::abs(s.amplitude(0b1111)), 1.0, 1e-15);
}

TEST(StateVector, EmptyAndHH) {
    Rng rng(1);
    const auto in = StateVector::random(3, rng);
    EXPECT_NEAR(fidelity(run(Circuit(3), in), in), 1.0, 1e-15);
    Circuit hh(3);
    hh.append_layer({make_h(0)});
    hh.append_layer({make_h(0)});
    const auto out = run(hh, in);
    for (std::size_t i = 0; i < in.dimension(); i++) {
        EXPECT_NEAR(std::abs(out.amplitude(i) - in.amplitude(i)), 0.0, 1e-12);
    }
}

TEST(StateVector, Fidelities) {
    EXPECT_NEAR(fidelity(cat_state(2), cat_state(2)), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(StateVector::from_bits("00"), StateVector::from_bits("11")), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(StateVector::from_bits("00"), cat_state(2)), 0.5, 1e-15);
}

TEST(StateVector, PhaseDependentFidelity) {
    Rng rng(2);
    const auto psi = StateVector::random(2, rng);
    std::vector<Complex> neg = psi.amplitudes();
    for (auto &a : neg) {
        a = -a;
    }
    const StateVector m(2, neg);
    EXPECT_NEAR(phase_dependent_fidelity(psi, psi), 1.0, 1e-12);
    EXPECT_NEAR(phase_dependent_fidelity(psi, m), -3.0, 1e-12);
    EXPECT_NEAR(fidelity(psi, m), 1.0, 1e-12);
    const auto z = StateVector::from_bits("0");
    const auto p = StateVector::product({LocalState::plus()});
    EXPECT_NEAR(phase_dependent_fidelity(z, p), std::sqrt(2.0) - 1.0, 1e-12);
}

TEST(StateVector, MeasurementDistributions) {
    const auto d = measurement_distribution(cat_state(3), {0, 1, 2});
    EXPECT_NEAR(d.prob("000"), 0.5, 1e-15);
    EXPECT_NEAR(d.prob("111"), 0.5, 1e-15);
    EXPECT_EQ(d.as_map(1e-15).size(), 2u);
    const auto p = measurement_distribution(StateVector::product({LocalState::plus()}), {0});
    EXPECT_NEAR(p.prob("0"), 0.5, 1e-15);
    EXPECT_THROW(measurement_distribution(cat_state(2), {0, 0}), std::invalid_argument);
    EXPECT_THROW(measurement_distribution(cat_state(2), {2}), std::out_of_range);
}

TEST(StateVector, MeasureInBasis) {
    const auto z = measure_in_basis(StateVector::from_bits("0"), 0, LocalState::zero());
    EXPECT_NEAR(z[0].probability, 1.0, 1e-15);
    EXPECT_FALSE(z[1].state.has_value());
    const auto p = measure_in_basis(StateVector::product({LocalState::plus()}), 0, LocalState::zero());
    EXPECT_NEAR(p[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(p[1].probability, 0.5, 1e-15);
}

// Measuring qubit 0 of R_{delta (x) chi} psi in the delta basis equals measuring
// psi first and applying R_chi on the delta outcome.
TEST(StateVector, MeasureThenReflectIdentity) {
    Rng rng(8);
    for (int t = 0; t < 20; t++) {
        const auto psi = StateVector::random(3, rng);
        const LocalState d = testing::random_local(rng);
        const LocalState c1 = testing::random_local(rng), c2 = testing::random_local(rng);
        const auto after = apply_gate(psi, make_rtensor({{0, d}, {1, c1}, {2, c2}}));
        const auto lhs = measure_in_basis(after, 0, d);
        const auto rhs0 = measure_in_basis(psi, 0, d);
        for (int b = 0; b < 2; b++) {
            EXPECT_NEAR(lhs[b].probability, rhs0[b].probability, 1e-12);
            if (!lhs[b].state) {
                continue;
            }
            StateVector r = *rhs0[b].state;
            if (b == 0) {
                r = apply_gate(r, make_rtensor({{1, c1}, {2, c2}}));
            }
            EXPECT_NEAR(fidelity(*lhs[b].state, r), 1.0, 1e-10);
        }
    }
}

TEST(StateVector, BestNekomataFidelity) {
    EXPECT_NEAR(best_nekomata_fidelity(cat_state(2), {0, 1}).fidelity, 1.0, 1e-12);
    EXPECT_NEAR(best_nekomata_fidelity(StateVector::from_bits("00"), {0, 1}).fidelity, 0.5, 1e-12);
    std::vector<Complex> v(4, 0.0);
    v[0] = std::sqrt(0.9);
    v[3] = std::sqrt(0.1);
    const StateVector s(2, v);
    // Brute force over the phase of (e^{i phi}|00> + |11>)/sqrt 2.
    double best = 0.0;
    for (int k = 0; k < 3600; k++) {
        const double phi = 2.0 * M_PI * k / 3600.0;
        std::vector<Complex> nu(4, 0.0);
        nu[0] = std::polar(1.0 / std::sqrt(2.0), phi);
        nu[3] = 1.0 / std::sqrt(2.0);
        best = std::max(best, fidelity(StateVector(2, nu), s));
    }
    EXPECT_NEAR(best_nekomata_fidelity(s, {0, 1}).fidelity, best, 1e-9);
    EXPECT_NEAR(best, 0.8, 1e-9);
}

TEST(StateVector, RejectsBadInput) {
    EXPECT_THROW(StateVector(2, std::vector<Complex>(3, 0.0)), std::invalid_argument);
    EXPECT_THROW(StateVector(1, std::vector<Complex>{1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(StateVector(StateVector::kMaxQubits + 1), std::invalid_argument);
}

TEST(StateVector, JsonRoundTrip) {
    Rng rng(4);
    const auto s = StateVector::random(3, rng);
    const auto back = state_from_json(state_to_json(s));
    EXPECT_EQ(back.amplitudes(), s.amplitudes());
}

}  // namespace
}  // namespace qacnek
