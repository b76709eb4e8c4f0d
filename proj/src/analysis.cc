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

#include "qacnek/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qacnek {

namespace {

double clamped_acos(double x) { return std::acos(std::clamp(x, 0.0, 1.0)); }

Eigen::MatrixXcd random_isometry(std::size_t dim, std::size_t cols, Rng &rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < g.rows(); i++) {
        for (Eigen::Index j = 0; j < g.cols(); j++) {
            g(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    const Eigen::MatrixXcd q = qr.householderQ();
    return q.leftCols(static_cast<Eigen::Index>(cols));
}

Eigen::MatrixXcd random_rank_one(std::size_t dim, Rng &rng) {
    const Eigen::VectorXcd v = random_unit_vector(dim, rng);
    return v * v.adjoint();
}

}  // namespace

double delta_metric(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("delta_metric: dimension mismatch");
    }
    return clamped_acos(std::abs(a.dot(b)));
}

double delta_metric(const StateVector &a, const StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("delta_metric: dimension mismatch");
    }
    return clamped_acos(std::abs(inner_product(a, b)));
}

Eigen::VectorXcd random_unit_vector(std::size_t dim, Rng &rng) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); i++) {
        v(i) = Complex(rng.normal(), rng.normal());
    }
    return v / v.norm();
}

bool delta_triangle_check(std::size_t trials, std::size_t dim, Rng &rng) {
    bool ok = true;
    for (std::size_t t = 0; t < trials; t++) {
        const auto a = random_unit_vector(dim, rng);
        const auto b = random_unit_vector(dim, rng);
        const auto c = random_unit_vector(dim, rng);
        ok = ok && delta_metric(a, c) <= delta_metric(a, b) + delta_metric(b, c) + 1e-9;
    }
    return ok;
}

bool check_cos_exp_inequality(std::size_t points) {
    if (points < 2) {
        throw std::invalid_argument("check_cos_exp_inequality: need at least two grid points");
    }
    bool ok = true;
    for (std::size_t i = 0; i < points; i++) {
        const double r = static_cast<double>(i) / static_cast<double>(points - 1);
        ok = ok && std::cos(r) <= std::exp(-r * r / 2.0) + 1e-12;
    }
    return ok;
}

bool is_projection(const Eigen::MatrixXcd &q, double tol) {
    if (q.rows() != q.cols()) {
        return false;
    }
    return (q * q - q).cwiseAbs().maxCoeff() <= tol && (q.adjoint() - q).cwiseAbs().maxCoeff() <= tol;
}

void validate_chain(const ProjectionChain &chain) {
    const auto dim = static_cast<Eigen::Index>(chain.dimension);
    if (chain.projections.empty()) {
        throw std::invalid_argument("projection chain: need at least one projection");
    }
    if (chain.iota.size() != dim || std::abs(chain.iota.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("projection chain: input must be a unit vector of the chain dimension");
    }
    for (const auto &q : chain.projections) {
        if (q.rows() != dim || !is_projection(q)) {
            throw std::invalid_argument("projection chain: not an orthogonal projection");
        }
    }
}

ProjectionChain random_projection_chain(std::size_t dim, std::size_t depth, Rng &rng) {
    if (dim == 0 || depth == 0) {
        throw std::invalid_argument("random_projection_chain: need dim >= 1 and depth >= 1");
    }
    ProjectionChain c;
    c.dimension = dim;
    for (std::size_t k = 0; k < depth; k++) {
        const std::size_t rank = 1 + rng.below(dim);
        const Eigen::MatrixXcd v = random_isometry(dim, rank, rng);
        c.projections.push_back(v * v.adjoint());
    }
    c.iota = random_unit_vector(dim, rng);
    return c;
}

ChainBound check_projection_chain_bound(const ProjectionChain &chain) {
    validate_chain(chain);
    Eigen::VectorXcd v = chain.iota;
    for (const auto &q : chain.projections) {
        v = q * v;
    }
    const auto &last = chain.projections.back();
    const double miss = std::max(0.0, 1.0 - chain.iota.dot(last * chain.iota).real());
    ChainBound b;
    b.lhs = v.norm();
    b.rhs = std::exp(-miss / (2.0 * static_cast<double>(chain.projections.size())));
    b.holds = b.lhs <= b.rhs + 1e-10;
    return b;
}

Interpolation optimal_interpolation(const Eigen::VectorXcd &sigma, const Eigen::VectorXcd &tau, std::size_t d) {
    if (d == 0) {
        throw std::invalid_argument("optimal_interpolation: need d >= 1");
    }
    if (sigma.size() != tau.size()) {
        throw std::invalid_argument("optimal_interpolation: dimension mismatch");
    }
    const Complex ov = sigma.dot(tau);
    const double mag = std::abs(ov);
    // Rotate tau so the overlap is real and nonnegative.
    const Complex phase = mag > 0.0 ? std::conj(ov) / mag : Complex(1.0);
    const Eigen::VectorXcd t = tau * phase;
    const double c = std::min(1.0, mag);
    const double eta = std::acos(c) / static_cast<double>(d);

    Interpolation out;
    Eigen::VectorXcd perp = t - sigma * c;
    const double pn = perp.norm();
    const bool parallel = pn <= 1e-14;
    if (!parallel) {
        perp /= pn;
    }
    for (std::size_t j = 1; j < d; j++) {
        const double a = static_cast<double>(j) * eta;
        out.states.push_back(parallel ? Eigen::VectorXcd(sigma) : Eigen::VectorXcd(std::cos(a) * sigma + std::sin(a) * perp));
    }
    double prod = 1.0;
    Eigen::VectorXcd prev = sigma;
    for (std::size_t j = 1; j <= d; j++) {
        const Eigen::VectorXcd &cur = j < d ? out.states[j - 1] : t;
        prod *= prev.dot(cur).real();
        prev = cur;
    }
    out.product = parallel ? 1.0 : prod;
    out.closed_form = std::pow(std::cos(clamped_acos(mag) / static_cast<double>(d)), static_cast<double>(d));
    if (std::abs(out.product - out.closed_form) > 1e-10) {
        throw std::logic_error("optimal_interpolation: product does not match the closed form");
    }
    return out;
}

double chain_product(const Eigen::VectorXcd &sigma, const std::vector<Eigen::VectorXcd> &middle,
                     const Eigen::VectorXcd &tau) {
    double prod = 1.0;
    Eigen::VectorXcd prev = sigma;
    for (const auto &m : middle) {
        prod *= std::abs(prev.dot(m));
        prev = m;
    }
    return prod * std::abs(prev.dot(tau));
}

double nekomata_dominance_slack(std::size_t qubits, std::size_t targets, Rng &rng) {
    if (targets == 0 || targets > qubits) {
        throw std::invalid_argument("nekomata_dominance_slack: need 1 <= targets <= qubits");
    }
    const StateVector alpha = StateVector::random(qubits, rng);
    std::vector<Qubit> tq(targets);
    for (std::size_t k = 0; k < targets; k++) {
        tq[k] = static_cast<Qubit>(k);
    }
    const auto rep = best_nekomata_fidelity(alpha, tq);
    const double bound = 0.5 + std::sqrt(std::min(rep.p_zeros, rep.q_ones));

    // A random nekomata (|0^n, a> + |1^n, b>) / sqrt 2 on the same targets.
    const std::size_t anc = qubits - targets;
    const auto a = random_unit_vector(std::size_t{1} << anc, rng);
    const auto b = random_unit_vector(std::size_t{1} << anc, rng);
    std::vector<Complex> nu(std::size_t{1} << qubits, Complex{0.0});
    const std::size_t ones = ((std::size_t{1} << targets) - 1) << anc;
    for (std::size_t i = 0; i < (std::size_t{1} << anc); i++) {
        nu[i] = a(static_cast<Eigen::Index>(i)) / std::sqrt(2.0);
        nu[ones | i] = b(static_cast<Eigen::Index>(i)) / std::sqrt(2.0);
    }
    const double f = fidelity(StateVector(qubits, std::move(nu)), alpha);
    if (f > rep.fidelity + 1e-10) {
        throw std::logic_error("nekomata_dominance_slack: a nekomata beat the best-fidelity formula");
    }
    return bound - rep.fidelity;
}

SplitProjectionCheck check_split_projection_bound(std::size_t n, std::size_t ancillas, Rng &rng) {
    if (n == 0) {
        throw std::invalid_argument("check_split_projection_bound: need n >= 1");
    }
    const std::size_t total = n + ancillas;
    if (total > 12) {
        throw std::invalid_argument("check_split_projection_bound: at most 12 qubits");
    }
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(1, 1);
    Eigen::MatrixXcd qp = Eigen::MatrixXcd::Identity(1, 1);
    auto kron = [](const Eigen::MatrixXcd &x, const Eigen::MatrixXcd &y) {
        Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
        for (Eigen::Index i = 0; i < x.rows(); i++) {
            for (Eigen::Index j = 0; j < x.cols(); j++) {
                out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
            }
        }
        return out;
    };
    for (std::size_t j = 0; j < n; j++) {
        const Eigen::MatrixXcd pj = random_rank_one(2, rng);
        q = kron(q, pj);
        qp = kron(qp, Eigen::MatrixXcd::Identity(2, 2) - pj);
    }
    const Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(1 << ancillas, 1 << ancillas);
    q = kron(q, ia);
    qp = kron(qp, ia);

    const std::size_t dim = std::size_t{1} << total;
    Eigen::VectorXcd u = q * random_unit_vector(dim, rng);
    Eigen::VectorXcd w = qp * random_unit_vector(dim, rng);
    const Eigen::VectorXcd delta = (u / u.norm() + w / w.norm()) / std::sqrt(2.0);
    const Eigen::VectorXcd alpha = random_unit_vector(dim, rng);

    SplitProjectionCheck r;
    r.overlap = std::norm(delta.dot(alpha));
    r.bound = 0.5 + std::min((q * alpha).norm(), (qp * alpha).norm());
    r.holds = r.overlap <= r.bound + 1e-10;
    return r;
}

double generalized_markov_t(const FiniteLaw &law, double a, double delta) {
    if (!(delta > 0.0 && delta <= 1.0) || !(a > 0.0)) {
        throw std::invalid_argument("generalized_markov_t: need 0 < delta <= 1 and a > 0");
    }
    if (law.values.size() != law.probs.size() || law.values.empty()) {
        throw std::invalid_argument("generalized_markov_t: values and probabilities must match");
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < law.values.size(); i++) {
        if (law.values[i] < 0.0 || law.probs[i] < 0.0) {
            throw std::invalid_argument("generalized_markov_t: law must be nonnegative");
        }
        mean += law.values[i] * law.probs[i];
    }
    const double b = a * std::exp(1.0 / delta - 1.0);
    auto tail = [&](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < law.values.size(); i++) {
            if (law.values[i] >= t) {
                s += law.probs[i];
            }
        }
        return s;
    };
    // P(X >= t) is constant on (v_k, v_{k+1}] while delta E / t decreases, so
    // the smallest witness is a or sits just above a support point.
    std::vector<double> cand{a, b};
    for (double v : law.values) {
        const double up = std::nextafter(v, std::numeric_limits<double>::infinity());
        if (up >= a && up <= b) {
            cand.push_back(up);
        }
    }
    std::sort(cand.begin(), cand.end());
    for (double t : cand) {
        if (tail(t) <= delta * mean / t + 1e-15) {
            return t;
        }
    }
    throw std::logic_error("generalized_markov_t: no witness found");
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u >= adj_.size() || v >= adj_.size()) {
        throw std::out_of_range("Graph::add_edge: vertex out of range");
    }
    if (u == v) {
        throw std::invalid_argument("Graph::add_edge: self-loop");
    }
    if (has_edge(u, v)) {
        throw std::invalid_argument("Graph::add_edge: duplicate edge");
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    edges_++;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
    return std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end();
}

double Graph::average_degree() const {
    return adj_.empty() ? 0.0 : 2.0 * static_cast<double>(edges_) / static_cast<double>(adj_.size());
}

Graph Graph::random(std::size_t n, double edge_prob, Rng &rng) {
    Graph g(n);
    for (std::size_t u = 0; u < n; u++) {
        for (std::size_t v = u + 1; v < n; v++) {
            if (rng.bernoulli(edge_prob)) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

bool is_independent(const Graph &g, const std::vector<std::size_t> &set) {
    for (std::size_t i = 0; i < set.size(); i++) {
        for (std::size_t j = i + 1; j < set.size(); j++) {
            if (set[i] == set[j] || g.has_edge(set[i], set[j])) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::size_t> turan_from_permutation(const Graph &g, const std::vector<std::size_t> &rank) {
    if (rank.size() != g.num_vertices()) {
        throw std::invalid_argument("turan_from_permutation: rank size mismatch");
    }
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < g.num_vertices(); u++) {
        bool lowest = true;
        for (std::size_t v : g.neighbors(u)) {
            lowest = lowest && rank[u] < rank[v];
        }
        if (lowest) {
            out.push_back(u);
        }
    }
    return out;
}

std::vector<std::size_t> turan_independent_set(const Graph &g, Rng &rng) {
    const std::size_t n = g.num_vertices();
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; i++) {
        rank[i] = i;
    }
    for (std::size_t i = n; i > 1; i--) {
        std::swap(rank[i - 1], rank[rng.below(i)]);
    }
    return turan_from_permutation(g, rank);
}

double turan_expected_size(const Graph &g) {
    double s = 0.0;
    for (std::size_t u = 0; u < g.num_vertices(); u++) {
        s += 1.0 / static_cast<double>(g.degree(u) + 1);
    }
    return s;
}

TuranStats turan_trials(const Graph &g, std::size_t draws, std::uint64_t seed) {
    if (draws == 0) {
        throw std::invalid_argument("turan_trials: need at least one draw");
    }
    std::vector<std::size_t> sizes(draws);
    std::vector<char> indep(draws, 1);
#pragma omp parallel for schedule(static)
    for (std::size_t t = 0; t < draws; t++) {
        Rng rng(seed, t);
        const auto set = turan_independent_set(g, rng);
        sizes[t] = set.size();
        indep[t] = is_independent(g, set) ? 1 : 0;
    }
    TuranStats st;
    double sum = 0.0, sq = 0.0;
    for (std::size_t t = 0; t < draws; t++) {
        const double s = static_cast<double>(sizes[t]);
        sum += s;
        sq += s * s;
        st.best = std::max(st.best, sizes[t]);
        st.all_independent = st.all_independent && indep[t];
    }
    const double n = static_cast<double>(draws);
    st.mean = sum / n;
    st.stddev = std::sqrt(std::max(0.0, sq / n - st.mean * st.mean));
    st.expected = turan_expected_size(g);
    st.lower = static_cast<double>(g.num_vertices()) / (g.average_degree() + 1.0);
    return st;
}

}  // namespace qacnek
