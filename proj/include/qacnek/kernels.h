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

// Dense amplitude kernels. Every kernel exists twice: an OpenMP version used by
// the library and a serial reference kept for testing and benchmarking. Both
// perform the same floating-point operations in the same order per output
// element (reductions use a fixed chunking), so results are bit-identical.
//
// Basis index convention: qubit q of an n-qubit register is bit (n - 1 - q).

#ifndef QACNEK_KERNELS_H
#define QACNEK_KERNELS_H

#include <cstdint>
#include <span>
#include <vector>

#include "qacnek/circuit.h"

namespace qacnek::kernels {

using Index = std::uint64_t;

inline Index qubit_mask(std::size_t num_qubits, Qubit q) { return Index{1} << (num_qubits - 1 - q); }

/// Reduction chunk length shared by the serial and parallel reductions.
inline constexpr Index kReductionChunk = Index{1} << 12;

/// Precomputed description of an R-tensor reflection on a register.
struct RTensorPlan {
    std::vector<Index> offsets;   // basis offset of each local pattern s
    std::vector<Complex> chi;     // tensor-product amplitudes chi_s
    std::vector<Index> rest_bits; // single-bit masks outside the support, ascending
};
RTensorPlan make_rtensor_plan(std::size_t num_qubits, const RTensorGate &g);

namespace serial {
void apply_one_qubit(std::span<Complex> amps, std::size_t num_qubits, Qubit q, const Mat2 &m);
void apply_toffoli(std::span<Complex> amps, Index controls, Index target);
void apply_or(std::span<Complex> amps, Index controls, Index target);
void apply_fanout(std::span<Complex> amps, Index source, Index targets);
void apply_rtensor(std::span<Complex> amps, const RTensorPlan &plan);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);
double norm_sq(std::span<const Complex> a);
}  // namespace serial

namespace parallel {
void apply_one_qubit(std::span<Complex> amps, std::size_t num_qubits, Qubit q, const Mat2 &m);
void apply_toffoli(std::span<Complex> amps, Index controls, Index target);
void apply_or(std::span<Complex> amps, Index controls, Index target);
void apply_fanout(std::span<Complex> amps, Index source, Index targets);
void apply_rtensor(std::span<Complex> amps, const RTensorPlan &plan);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);
double norm_sq(std::span<const Complex> a);
}  // namespace parallel

/// Dispatches one gate to the parallel (default) or serial kernels.
void apply_gate(std::span<Complex> amps, std::size_t num_qubits, const Gate &g, bool use_serial = false);

/// Caps the OpenMP thread count from QACNEK_NUM_THREADS when set.
void configure_threads_from_env();

}  // namespace qacnek::kernels

#endif
