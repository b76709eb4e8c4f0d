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

// Numerical checks of the projection-chain bounds, the angle metric,
// generalized Markov, random-permutation independent sets, and the depth-2
// ancilla reduction.

#ifndef QACNEK_ANALYSIS_H
#define QACNEK_ANALYSIS_H

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qacnek/circuit.h"
#include "qacnek/rng.h"
#include "qacnek/state_vector.h"

namespace qacnek {

// ---- angle metric ----

/// arccos |<a|b>|, clamped into [0, pi/2].
double delta_metric(const StateVector &a, const StateVector &b);
double delta_metric(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

/// Normalized complex Gaussian vector.
Eigen::VectorXcd random_unit_vector(std::size_t dim, Rng &rng);

/// Delta(a, c) <= Delta(a, b) + Delta(b, c) + 1e-9 on `trials` random triples.
bool delta_triangle_check(std::size_t trials, std::size_t dim, Rng &rng);

/// cos r <= exp(-r^2 / 2) + 1e-12 on a uniform grid of `points` over [0, 1].
bool check_cos_exp_inequality(std::size_t points);

// ---- projection chains ----

struct ProjectionChain {
    std::size_t dimension = 0;
    std::vector<Eigen::MatrixXcd> projections;  // Q_1 .. Q_d
    Eigen::VectorXcd iota;
};

/// Q = Q^2 = Q^dagger within tol.
bool is_projection(const Eigen::MatrixXcd &q, double tol = 1e-10);
/// Throws std::invalid_argument on shape or projection violations.
void validate_chain(const ProjectionChain &chain);

/// Random orthogonal projections of random rank onto random subspaces.
ProjectionChain random_projection_chain(std::size_t dim, std::size_t depth, Rng &rng);

struct ChainBound {
    double lhs = 0.0;  // ||Q_d ... Q_1 iota||
    double rhs = 0.0;  // exp(-<iota|(I - Q_d)|iota> / (2d))
    bool holds = false;
};

ChainBound check_projection_chain_bound(const ProjectionChain &chain);

struct Interpolation {
    std::vector<Eigen::VectorXcd> states;  // chi_1 .. chi_{d-1}
    double product = 0.0;                  // prod <chi_{j-1}|chi_j>, chi_0 = sigma, chi_d = tau
    double closed_form = 0.0;              // cos(arccos|<sigma|tau>| / d)^d
};

/// Evenly spaced great-circle interpolation from sigma to tau (tau is first
/// rotated so that <sigma|tau> >= 0). Throws std::logic_error if the product
/// and the closed form differ by more than 1e-10.
Interpolation optimal_interpolation(const Eigen::VectorXcd &sigma, const Eigen::VectorXcd &tau, std::size_t d);

/// |prod_j <chi_{j-1}|chi_j>| for an arbitrary chain of unit vectors,
/// chi_0 = sigma and chi_d = tau.
double chain_product(const Eigen::VectorXcd &sigma, const std::vector<Eigen::VectorXcd> &middle,
                     const Eigen::VectorXcd &tau);

// ---- fidelity bounds ----

/// Checks |<nu|alpha>|^2 <= best_nekomata_fidelity <= 1/2 + sqrt(min(p, q))
/// for a random state on `qubits` qubits with the first `targets` as targets
/// and a random nekomata nu. Returns the slack of the outer inequality.
double nekomata_dominance_slack(std::size_t qubits, std::size_t targets, Rng &rng);

struct SplitProjectionCheck {
    double overlap = 0.0;  // |<delta|alpha>|^2
    double bound = 0.0;    // 1/2 + min(||Q alpha||, ||Q' alpha||)
    bool holds = false;
};

/// Random instance with n one-qubit target spaces and `ancillas` ancilla
/// qubits: Q = (x) Q_j (x) I, Q' = (x) (I - Q_j) (x) I for random rank-one Q_j,
/// and delta measuring to each with probability 1/2.
SplitProjectionCheck check_split_projection_bound(std::size_t n, std::size_t ancillas, Rng &rng);

/// Constant used for the size budget c n / (d + 1) in small-instance sweeps;
/// any value below 1 / (4 ln 3) is admissible.
inline constexpr double kSmallSizeConstant = 0.22;

// ---- generalized Markov ----

struct FiniteLaw {
    std::vector<double> values;  // nonnegative
    std::vector<double> probs;   // sum to 1
};

/// Smallest t in [a, a e^{1/delta - 1}] with P(X >= t) <= delta E[X] / t,
/// found by scanning interval endpoints and support points.
double generalized_markov_t(const FiniteLaw &law, double a, double delta);

// ---- random-permutation independent sets ----

class Graph {
   public:
    explicit Graph(std::size_t n) : adj_(n) {}
    /// Throws on self-loops, duplicates, and out-of-range vertices.
    void add_edge(std::size_t u, std::size_t v);
    std::size_t num_vertices() const { return adj_.size(); }
    std::size_t num_edges() const { return edges_; }
    const std::vector<std::size_t> &neighbors(std::size_t u) const { return adj_[u]; }
    std::size_t degree(std::size_t u) const { return adj_[u].size(); }
    double average_degree() const;
    bool has_edge(std::size_t u, std::size_t v) const;

    static Graph random(std::size_t n, double edge_prob, Rng &rng);

   private:
    std::vector<std::vector<std::size_t>> adj_;
    std::size_t edges_ = 0;
};

bool is_independent(const Graph &g, const std::vector<std::size_t> &set);

/// Vertices ranked before all their neighbors under the permutation.
std::vector<std::size_t> turan_from_permutation(const Graph &g, const std::vector<std::size_t> &rank);
/// One draw with a uniform random permutation.
std::vector<std::size_t> turan_independent_set(const Graph &g, Rng &rng);

/// sum_u 1 / (deg(u) + 1).
double turan_expected_size(const Graph &g);

struct TuranStats {
    double mean = 0.0;
    double stddev = 0.0;  // of a single draw
    double expected = 0.0;
    double lower = 0.0;   // n / (avg degree + 1)
    std::size_t best = 0;
    bool all_independent = true;
};

TuranStats turan_trials(const Graph &g, std::size_t draws, std::uint64_t seed);

// ---- depth-2 ancilla reduction ----

/// L2 L1 |input> with designated targets. Gates are R-tensor gates only.
struct Depth2Construction {
    std::size_t num_qubits = 0;
    Layer L1;
    Layer L2;
    std::vector<LocalState> input;
    std::vector<Qubit> targets;
};

/// Random construction: each layer partitions a shuffled register into
/// reflections on 1..3 qubits, each kept with probability 0.8; targets are
/// qubits 0..num_targets-1.
Depth2Construction random_depth2_construction(std::size_t num_qubits, std::size_t num_targets, Rng &rng);

/// Probability that the targets of L2 L1 |input> measure to `goal`
/// (first target most significant in goal's indexing).
double target_goal_probability(const Depth2Construction &c, const StateVector &goal);

/// True when every ancilla is acted on by both layers and every gate acts on
/// a target.
bool satisfies_reduced_form(const Depth2Construction &c);

struct ReductionStep {
    std::string action;        // "drop", "measure", "remove-gate"
    std::vector<Qubit> qubits;  // original labels measured or dropped
    std::uint64_t branch = 0;
    double before = 0.0;
    double after = 0.0;
    double branch_average = 0.0;  // sum over branches of probability * goal probability
};

struct ReductionResult {
    Depth2Construction construction;
    std::vector<ReductionStep> steps;
    double initial_probability = 0.0;
    double final_probability = 0.0;
};

/// Measures out ancillas until the reduced form holds, each time keeping the
/// first branch whose goal probability is at least the current one. Desk
/// scale: at most 14 qubits.
ReductionResult reduce_depth2_construction(const Depth2Construction &c, const StateVector &goal);

}  // namespace qacnek

#endif
