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

// Approximate nekomata circuits on an n x (M+1) grid, their parameter
// equations, and the purely/mostly classical classification.
//
// Grid layout is column-major: qubit (row r, column c) is c * n + r, and the
// last column c = M holds the targets.

#ifndef QACNEK_NEKOMATA_H
#define QACNEK_NEKOMATA_H

#include <cstdint>
#include <optional>
#include <string>

#include "qacnek/circuit.h"

namespace qacnek {

struct GridParams {
    std::size_t n = 0;
    std::uint64_t M = 0;
    double delta = 0.0;
    double epsilon = 0.0;  // 0 when M was given directly
    /// |(1 - 2 delta^n)^{2M} - 1/2|
    double residual = 0.0;
};

inline constexpr std::uint64_t kMaxColumns = std::uint64_t{1} << 48;
inline constexpr std::uint64_t kMaxGridQubits = std::uint64_t{1} << 24;

/// ceil((ln 2 / 4) (ln 2 * n / e')^n) with e' = 2 epsilon / 3. Throws
/// std::overflow_error beyond 2^48.
std::uint64_t choose_M(std::size_t n, double epsilon);

/// (1 - 2 delta^n)^{2M} - 1/2, evaluated through log1p.
double delta_equation(std::size_t n, std::uint64_t M, double delta);

/// The root of delta_equation in (0, 2^{-1/n}), bisected to machine precision.
double solve_delta(std::size_t n, std::uint64_t M);

GridParams make_grid_params(std::size_t n, std::uint64_t M, double delta, double epsilon = 0.0);

/// Layer 1: per ancilla column an n-qubit R-tensor with every factor
/// sqrt(delta)|0> + sqrt(1 - delta)|1>. Layer 2: per row an OR of the row's
/// ancillas into the target column.
Circuit build_depth2_nekomata(std::size_t n, std::uint64_t M, double delta);

struct NekomataBuild {
    Circuit circuit;
    GridParams core;        // parameters of the depth-2 core
    std::size_t core_targets = 0;
};

struct DepthDOverrides {
    std::optional<std::uint64_t> M;
    std::optional<double> delta;
};

/// Depth-2 core on m = ceil(n / 2^{d-2}) targets, then CNOT fanout trees
/// spreading core target i over block i (contiguous, size <= 2^{d-2}).
/// Extra qubits follow the grid; targets are listed block by block.
NekomataBuild build_depthd_nekomata(std::size_t n, std::size_t d, double epsilon, DepthDOverrides overrides = {});

struct ClassificationResult {
    bool purely_classical = false;
    bool mostly_classical = false;
    bool nice = false;
    /// Witness when mostly classical: the circuit equals classical * first.
    Layer first;
    Circuit classical;
    std::string reason;  // why the circuit is not mostly classical / not nice
};

ClassificationResult classify(const Circuit &c);

struct ImpurityBound {
    double exact = 0.0;    // 4 M delta^n (1 - delta^n - (1 - delta)^n)
    double relaxed = 0.0;  // 4 M n delta^{n+1}
};

ImpurityBound impurity_bound(std::size_t n, std::uint64_t M, double delta);

}  // namespace qacnek

#endif
