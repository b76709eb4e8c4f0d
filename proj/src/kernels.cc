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

#include "qacnek/kernels.h"

#include <omp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace qacnek::kernels {

namespace {

using SIndex = std::int64_t;

Index mask_of(std::size_t n, const std::vector<Qubit> &qs) {
    Index m = 0;
    for (Qubit q : qs) {
        m |= qubit_mask(n, q);
    }
    return m;
}

/// Spreads the bits of `counter` over the positions listed in `bits`.
inline Index deposit(Index counter, const std::vector<Index> &bits) {
    Index r = 0;
    for (std::size_t k = 0; k < bits.size(); k++) {
        if ((counter >> k) & 1) {
            r |= bits[k];
        }
    }
    return r;
}

inline void one_qubit_pair(Complex *a, Index i, Index mask, const Mat2 &m) {
    const Complex a0 = a[i];
    const Complex a1 = a[i | mask];
    a[i] = m[0] * a0 + m[1] * a1;
    a[i | mask] = m[2] * a0 + m[3] * a1;
}

inline void rtensor_block(Complex *a, Index base, const RTensorPlan &p) {
    Complex overlap = 0.0;
    for (std::size_t s = 0; s < p.chi.size(); s++) {
        overlap += std::conj(p.chi[s]) * a[base | p.offsets[s]];
    }
    const Complex scaled = 2.0 * overlap;
    for (std::size_t s = 0; s < p.chi.size(); s++) {
        a[base | p.offsets[s]] -= p.chi[s] * scaled;
    }
}

inline Complex chunk_inner(const Complex *a, const Complex *b, Index lo, Index hi) {
    Complex acc = 0.0;
    for (Index i = lo; i < hi; i++) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

inline double chunk_norm(const Complex *a, Index lo, Index hi) {
    double acc = 0.0;
    for (Index i = lo; i < hi; i++) {
        acc += std::norm(a[i]);
    }
    return acc;
}

void check_same_size(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
}

}  // namespace

RTensorPlan make_rtensor_plan(std::size_t n, const RTensorGate &g) {
    RTensorPlan p;
    const std::size_t k = g.factors.size();
    if (k > 30) {
        throw std::invalid_argument("R-tensor gate arity too large for dense simulation");
    }
    p.chi.assign(Index{1} << k, Complex{1.0});
    p.offsets.assign(Index{1} << k, 0);
    // Pattern bit (k - 1 - j) selects the |1> component of factor j.
    for (Index s = 0; s < p.chi.size(); s++) {
        for (std::size_t j = 0; j < k; j++) {
            const bool one = (s >> (k - 1 - j)) & 1;
            const auto &f = g.factors[j];
            p.chi[s] *= one ? f.state.amp1 : f.state.amp0;
            if (one) {
                p.offsets[s] |= qubit_mask(n, f.qubit);
            }
        }
    }
    Index support = 0;
    for (const auto &f : g.factors) {
        support |= qubit_mask(n, f.qubit);
    }
    for (std::size_t b = 0; b < n; b++) {
        const Index bit = Index{1} << b;
        if (!(support & bit)) {
            p.rest_bits.push_back(bit);
        }
    }
    return p;
}

namespace serial {

void apply_one_qubit(std::span<Complex> amps, std::size_t n, Qubit q, const Mat2 &m) {
    const Index mask = qubit_mask(n, q);
    Complex *a = amps.data();
    for (Index i = 0; i < amps.size(); i++) {
        if (!(i & mask)) {
            one_qubit_pair(a, i, mask, m);
        }
    }
}

void apply_toffoli(std::span<Complex> amps, Index controls, Index target) {
    Complex *a = amps.data();
    for (Index i = 0; i < amps.size(); i++) {
        if (!(i & target) && (i & controls) == controls) {
            std::swap(a[i], a[i | target]);
        }
    }
}

void apply_or(std::span<Complex> amps, Index controls, Index target) {
    Complex *a = amps.data();
    for (Index i = 0; i < amps.size(); i++) {
        if (!(i & target) && (i & controls) != 0) {
            std::swap(a[i], a[i | target]);
        }
    }
}

void apply_fanout(std::span<Complex> amps, Index source, Index targets) {
    Complex *a = amps.data();
    for (Index i = 0; i < amps.size(); i++) {
        const Index j = i ^ targets;
        if ((i & source) && i < j) {
            std::swap(a[i], a[j]);
        }
    }
}

void apply_rtensor(std::span<Complex> amps, const RTensorPlan &plan) {
    const Index blocks = Index{1} << plan.rest_bits.size();
    for (Index r = 0; r < blocks; r++) {
        rtensor_block(amps.data(), deposit(r, plan.rest_bits), plan);
    }
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    check_same_size(a, b);
    Complex total = 0.0;
    for (Index lo = 0; lo < a.size(); lo += kReductionChunk) {
        total += chunk_inner(a.data(), b.data(), lo, std::min<Index>(lo + kReductionChunk, a.size()));
    }
    return total;
}

double norm_sq(std::span<const Complex> a) {
    double total = 0.0;
    for (Index lo = 0; lo < a.size(); lo += kReductionChunk) {
        total += chunk_norm(a.data(), lo, std::min<Index>(lo + kReductionChunk, a.size()));
    }
    return total;
}

}  // namespace serial

namespace parallel {

void apply_one_qubit(std::span<Complex> amps, std::size_t n, Qubit q, const Mat2 &m) {
    const Index mask = qubit_mask(n, q);
    Complex *a = amps.data();
    const SIndex size = static_cast<SIndex>(amps.size());
#pragma omp parallel for schedule(static)
    for (SIndex i = 0; i < size; i++) {
        if (!(static_cast<Index>(i) & mask)) {
            one_qubit_pair(a, static_cast<Index>(i), mask, m);
        }
    }
}

void apply_toffoli(std::span<Complex> amps, Index controls, Index target) {
    Complex *a = amps.data();
    const SIndex size = static_cast<SIndex>(amps.size());
#pragma omp parallel for schedule(static)
    for (SIndex s = 0; s < size; s++) {
        const Index i = static_cast<Index>(s);
        if (!(i & target) && (i & controls) == controls) {
            std::swap(a[i], a[i | target]);
        }
    }
}

void apply_or(std::span<Complex> amps, Index controls, Index target) {
    Complex *a = amps.data();
    const SIndex size = static_cast<SIndex>(amps.size());
#pragma omp parallel for schedule(static)
    for (SIndex s = 0; s < size; s++) {
        const Index i = static_cast<Index>(s);
        if (!(i & target) && (i & controls) != 0) {
            std::swap(a[i], a[i | target]);
        }
    }
}

void apply_fanout(std::span<Complex> amps, Index source, Index targets) {
    Complex *a = amps.data();
    const SIndex size = static_cast<SIndex>(amps.size());
#pragma omp parallel for schedule(static)
    for (SIndex s = 0; s < size; s++) {
        const Index i = static_cast<Index>(s);
        const Index j = i ^ targets;
        if ((i & source) && i < j) {
            std::swap(a[i], a[j]);
        }
    }
}

void apply_rtensor(std::span<Complex> amps, const RTensorPlan &plan) {
    const SIndex blocks = static_cast<SIndex>(Index{1} << plan.rest_bits.size());
    Complex *a = amps.data();
#pragma omp parallel for schedule(static)
    for (SIndex r = 0; r < blocks; r++) {
        rtensor_block(a, deposit(static_cast<Index>(r), plan.rest_bits), plan);
    }
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    check_same_size(a, b);
    const SIndex chunks = static_cast<SIndex>((a.size() + kReductionChunk - 1) / kReductionChunk);
    std::vector<Complex> partial(chunks);
#pragma omp parallel for schedule(static)
    for (SIndex c = 0; c < chunks; c++) {
        const Index lo = static_cast<Index>(c) * kReductionChunk;
        partial[c] = chunk_inner(a.data(), b.data(), lo, std::min<Index>(lo + kReductionChunk, a.size()));
    }
    Complex total = 0.0;
    for (const Complex &p : partial) {
        total += p;
    }
    return total;
}

double norm_sq(std::span<const Complex> a) {
    const SIndex chunks = static_cast<SIndex>((a.size() + kReductionChunk - 1) / kReductionChunk);
    std::vector<double> partial(chunks);
#pragma omp parallel for schedule(static)
    for (SIndex c = 0; c < chunks; c++) {
        const Index lo = static_cast<Index>(c) * kReductionChunk;
        partial[c] = chunk_norm(a.data(), lo, std::min<Index>(lo + kReductionChunk, a.size()));
    }
    double total = 0.0;
    for (double p : partial) {
        total += p;
    }
    return total;
}

}  // namespace parallel

void apply_gate(std::span<Complex> amps, std::size_t n, const Gate &g, bool use_serial) {
    for (Qubit q : gate_support(g)) {
        if (q >= n) {
            throw std::out_of_range("apply_gate: qubit " + std::to_string(q) + " outside a " + std::to_string(n) +
                                    "-qubit state");
        }
    }
    if (const auto *u = std::get_if<OneQubitGate>(&g)) {
        use_serial ? serial::apply_one_qubit(amps, n, u->qubit, u->matrix)
                   : parallel::apply_one_qubit(amps, n, u->qubit, u->matrix);
    } else if (const auto *t = std::get_if<ToffoliGate>(&g)) {
        const Index c = mask_of(n, t->controls), tg = qubit_mask(n, t->target);
        use_serial ? serial::apply_toffoli(amps, c, tg) : parallel::apply_toffoli(amps, c, tg);
    } else if (const auto *o = std::get_if<OrGate>(&g)) {
        const Index c = mask_of(n, o->controls), tg = qubit_mask(n, o->target);
        use_serial ? serial::apply_or(amps, c, tg) : parallel::apply_or(amps, c, tg);
    } else if (const auto *f = std::get_if<FanoutGate>(&g)) {
        const Index s = qubit_mask(n, f->source), ts = mask_of(n, f->targets);
        use_serial ? serial::apply_fanout(amps, s, ts) : parallel::apply_fanout(amps, s, ts);
    } else if (const auto *r = std::get_if<RTensorGate>(&g)) {
        const RTensorPlan plan = make_rtensor_plan(n, *r);
        use_serial ? serial::apply_rtensor(amps, plan) : parallel::apply_rtensor(amps, plan);
    }
}

void configure_threads_from_env() {
    if (const char *v = std::getenv("QACNEK_NUM_THREADS")) {
        const int k = std::atoi(v);
        if (k > 0) {
            omp_set_num_threads(k);
        }
    }
}

}  // namespace qacnek::kernels
