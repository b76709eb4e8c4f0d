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

#ifndef QACNEK_CLI_H
#define QACNEK_CLI_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace qacnek {

inline constexpr const char *kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv and runs one subcommand. Never throws.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string &bytes);

/// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::string &path, const std::string &contents);

// ---- verification suites ----

inline const std::vector<std::string> kSuites = {"projections", "metric", "markov", "turan", "depth2-reduce"};

/// Per-suite seed: output 0 of stream (seed, suite index + 1).
std::uint64_t suite_seed(std::uint64_t seed, const std::string &suite);

/// {"suite", "seed", "passed", "checks": [{"name", "passed", ...}]}.
nlohmann::json run_verify_suite(const std::string &suite, std::uint64_t seed);

}  // namespace qacnek

#endif
