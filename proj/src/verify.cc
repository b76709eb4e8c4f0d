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

// Randomized verification suites behind `qacnek verify`.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qacnek/analysis.h"
#include "qacnek/cli.h"

namespace qacnek {

using nlohmann::json;

namespace {

json check(const std::string &name, bool passed) { return json{{"name", name}, {"passed", passed}}; }

json suite_projections(Rng &rng) {
    json checks = json::array();

    // Chain bound on random chains.
    {
        std::size_t held = 0;
        double worst = -1.0;
        const std::size_t chains = 500;
        for (std::size_t i = 0; i < chains; i++) {
            const std::size_t dim = 2 + rng.below(15);
            const std::size_t d = 1 + rng.below(6);
            const auto b = check_projection_chain_bound(random_projection_chain(dim, d, rng));
            held += b.holds;
            worst = std::max(worst, b.lhs - b.rhs);
        }
        json c = check("chain-bound", held == chains);
        c["chains"] = chains;
        c["held"] = held;
        c["max_lhs_minus_rhs"] = worst;
        checks.push_back(c);
    }

    // Great-circle interpolation is optimal and matches the closed form.
    {
        bool ok = true;
        double worst_gap = 0.0;
        std::size_t beaten = 0;
        const std::size_t instances = 20;
        const std::size_t rivals = 1000;
        for (std::size_t i = 0; i < instances && ok; i++) {
            const auto sigma = random_unit_vector(8, rng);
            const auto tau = random_unit_vector(8, rng);
            const std::size_t d = 1 + rng.below(6);
            Interpolation best;
            try {
                best = optimal_interpolation(sigma, tau, d);
            } catch (const std::logic_error &) {
                ok = false;
                break;
            }
            worst_gap = std::max(worst_gap, std::abs(best.product - best.closed_form));
            for (std::size_t r = 0; r < rivals; r++) {
                std::vector<Eigen::VectorXcd> mid;
                const double noise = r % 2 ? 0.0 : rng.uniform() * 0.5;
                for (std::size_t j = 0; j + 1 < d; j++) {
                    if (r % 2) {
                        mid.push_back(random_unit_vector(8, rng));
                    } else {
                        Eigen::VectorXcd v = best.states[j] + noise * random_unit_vector(8, rng);
                        mid.push_back(v / v.norm());
                    }
                }
                if (chain_product(sigma, mid, tau) > best.product + 1e-10) {
                    beaten++;
                }
            }
        }
        json c = check("interpolation-optimal", ok && beaten == 0 && worst_gap <= 1e-10);
        c["instances"] = instances;
        c["rivals_per_instance"] = rivals;
        c["rivals_beating_optimum"] = beaten;
        c["max_closed_form_gap"] = worst_gap;
        checks.push_back(c);
    }

    {
        json c = check("cos-exp-grid", check_cos_exp_inequality(1000001));
        c["points"] = 1000001;
        checks.push_back(c);
    }
    return checks;
}

json suite_metric(Rng &rng) {
    json checks = json::array();
    {
        const auto z = StateVector::basis(1, 0);
        const auto o = StateVector::basis(1, 1);
        const auto p = StateVector::product({LocalState::plus()});
        const bool ok = delta_metric(z, z) == 0.0 && std::abs(delta_metric(z, o) - std::numbers::pi / 2) < 1e-12 &&
                        std::abs(delta_metric(z, p) - std::numbers::pi / 4) < 1e-12;
        checks.push_back(check("metric-examples", ok));
    }
    {
        json c = check("triangle", delta_triangle_check(10000, 8, rng));
        c["triples"] = 10000;
        checks.push_back(c);
    }
    {
        double min_slack = 1.0;
        bool ok = true;
        for (std::size_t i = 0; i < 1000; i++) {
            const std::size_t qubits = 2 + rng.below(5);
            const std::size_t targets = 1 + rng.below(qubits);
            try {
                min_slack = std::min(min_slack, nekomata_dominance_slack(qubits, targets, rng));
            } catch (const std::logic_error &) {
                ok = false;
            }
        }
        json c = check("nekomata-dominance", ok && min_slack >= -1e-10);
        c["states"] = 1000;
        c["min_slack"] = min_slack;
        checks.push_back(c);
    }
    {
        std::size_t held = 0;
        const std::size_t trials = 200;
        for (std::size_t i = 0; i < trials; i++) {
            const std::size_t n = 1 + rng.below(4);
            held += check_split_projection_bound(n, rng.below(3), rng).holds;
        }
        json c = check("split-projection", held == trials);
        c["instances"] = trials;
        c["held"] = held;
        checks.push_back(c);
    }
    return checks;
}

json suite_markov(Rng &rng) {
    json checks = json::array();
    {
        const double t1 = generalized_markov_t({{1.0}, {1.0}}, 2.0, 1.0);
        FiniteLaw u;
        for (int v = 0; v < 10; v++) {
            u.values.push_back(v);
            u.probs.push_back(0.1);
        }
        const double t2 = generalized_markov_t(u, 1.0, 1.0);
        checks.push_back(check("markov-examples", t1 == 2.0 && t2 == 1.0));
    }
    {
        bool ok = true;
        const std::size_t laws = 500;
        for (std::size_t i = 0; i < laws; i++) {
            FiniteLaw law;
            const std::size_t k = 1 + rng.below(10);
            double total = 0.0;
            for (std::size_t j = 0; j < k; j++) {
                law.values.push_back(std::floor(rng.uniform() * 20.0) / 2.0);
                law.probs.push_back(rng.uniform() + 1e-3);
                total += law.probs.back();
            }
            double mean = 0.0;
            for (std::size_t j = 0; j < k; j++) {
                law.probs[j] /= total;
                mean += law.values[j] * law.probs[j];
            }
            const double a = 0.1 + rng.uniform() * 5.0;
            const double delta = 0.05 + 0.95 * rng.uniform();
            const double t = generalized_markov_t(law, a, delta);
            double tail = 0.0;
            for (std::size_t j = 0; j < k; j++) {
                tail += law.values[j] >= t ? law.probs[j] : 0.0;
            }
            ok = ok && t >= a && t <= a * std::exp(1.0 / delta - 1.0) * (1 + 1e-12) && tail <= delta * mean / t + 1e-12;
        }
        json c = check("markov-witness", ok);
        c["laws"] = laws;
        checks.push_back(c);
    }
    return checks;
}

json suite_turan(Rng &rng) {
    json checks = json::array();
    {
        Graph path(3);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        std::vector<std::size_t> perm{0, 1, 2};
        double total = 0.0;
        do {
            total += static_cast<double>(turan_from_permutation(path, perm).size());
        } while (std::next_permutation(perm.begin(), perm.end()));
        checks.push_back(check("path-exhaustive", std::abs(total / 6.0 - 4.0 / 3.0) < 1e-12));
    }
    {
        bool ok = true;
        double worst_z = 0.0;
        const std::size_t graphs = 100;
        const std::size_t draws = 1000;
        for (std::size_t i = 0; i < graphs; i++) {
            const std::size_t n = 1 + rng.below(50);
            const Graph g = Graph::random(n, rng.uniform(), rng);
            const auto st = turan_trials(g, draws, rng.next_u64());
            const double se = st.stddev / std::sqrt(static_cast<double>(draws));
            const double z = se > 0.0 ? std::abs(st.mean - st.expected) / se : (st.mean == st.expected ? 0.0 : 1e9);
            worst_z = std::max(worst_z, z);
            // 4.5 sigma per graph keeps the false-alarm rate over 100 graphs below 1e-3.
            ok = ok && st.all_independent && z <= 4.5 && st.expected >= st.lower - 1e-9 &&
                 static_cast<double>(st.best) >= st.lower - 1e-9;
        }
        json c = check("turan-expectation", ok);
        c["graphs"] = graphs;
        c["draws"] = draws;
        c["max_abs_z"] = worst_z;
        checks.push_back(c);
    }
    return checks;
}

json suite_depth2(Rng &rng) {
    json checks = json::array();
    bool ok = true;
    std::size_t steps = 0;
    double worst_drop = 0.0;
    double worst_avg = 0.0;
    const std::size_t instances = 40;
    for (std::size_t i = 0; i < instances; i++) {
        const std::size_t n = 3 + rng.below(6);
        const std::size_t t = 1 + rng.below(std::min<std::size_t>(3, n - 1));
        const auto c = random_depth2_construction(n, t, rng);
        const StateVector goal = rng.bernoulli(0.5) ? cat_state(t) : StateVector::random(t, rng);
        const auto r = reduce_depth2_construction(c, goal);
        std::size_t qubits = c.num_qubits;
        for (const auto &s : r.steps) {
            worst_drop = std::max(worst_drop, s.before - s.after);
            worst_avg = std::max(worst_avg, std::abs(s.branch_average - s.before));
            if (s.action != "remove-gate") {
                ok = ok && s.qubits.size() >= 1;
                qubits -= s.qubits.size();
            }
        }
        steps += r.steps.size();
        ok = ok && qubits == r.construction.num_qubits && satisfies_reduced_form(r.construction) &&
             r.final_probability >= r.initial_probability - 1e-10;
    }
    json c = check("reduction", ok && worst_drop <= 1e-10 && worst_avg <= 1e-9);
    c["instances"] = instances;
    c["steps"] = steps;
    c["max_step_drop"] = worst_drop;
    c["max_branch_average_error"] = worst_avg;
    checks.push_back(c);
    return checks;
}

}  // namespace

std::uint64_t suite_seed(std::uint64_t seed, const std::string &suite) {
    const auto it = std::find(kSuites.begin(), kSuites.end(), suite);
    if (it == kSuites.end()) {
        throw std::invalid_argument("unknown suite: " + suite);
    }
    Rng r(seed, static_cast<std::uint64_t>(it - kSuites.begin()) + 1);
    return r.next_u64();
}

json run_verify_suite(const std::string &suite, std::uint64_t seed) {
    const std::uint64_t sub = suite_seed(seed, suite);
    Rng rng(sub);
    json checks;
    if (suite == "projections") {
        checks = suite_projections(rng);
    } else if (suite == "metric") {
        checks = suite_metric(rng);
    } else if (suite == "markov") {
        checks = suite_markov(rng);
    } else if (suite == "turan") {
        checks = suite_turan(rng);
    } else {
        checks = suite_depth2(rng);
    }
    bool passed = true;
    for (const auto &c : checks) {
        passed = passed && c["passed"].get<bool>();
    }
    return json{{"suite", suite}, {"seed", sub}, {"passed", passed}, {"checks", checks}};
}

}  // namespace qacnek
