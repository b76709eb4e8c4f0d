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

#ifndef QACNEK_CIRCUIT_JSON_H
#define QACNEK_CIRCUIT_JSON_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "qacnek/circuit.h"

namespace qacnek {

/// Malformed circuit text. `line`/`column` are 1-based; both are 0 when the
/// text is syntactically valid JSON but does not describe a circuit, in which
/// case the message names the offending JSON path.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &msg, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_real(double x);

/// JSON circuit text:
///   {"num_qubits": n, "targets": [..] | null, "layers": [[gate, ...], ...]}
/// with gate objects
///   {"kind": "u1", "qubit": q, "matrix": [[re,im] x4]}        (row-major)
///   {"kind": "toffoli" | "or", "controls": [..], "target": t}
///   {"kind": "rtensor", "factors": [{"qubit": q, "amp0": [re,im], "amp1": [re,im]}, ..]}
///   {"kind": "fanout", "source": s, "targets": [..]}
std::string serialize_circuit(const Circuit &c);
Circuit deserialize_circuit(std::string_view text);

Circuit read_circuit_file(const std::string &path);

}  // namespace qacnek

#endif
