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

#include "qacnek/circuit_json.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qacnek {

using nlohmann::json;

ParseError::ParseError(const std::string &msg, std::size_t line, std::size_t column)
    : std::runtime_error(msg), line_(line), column_(column) {}

std::string format_real(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("format_real: non-finite value");
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    std::string s(buf);
    if (s == "-0") {
        s = "0";
    }
    return s;
}

namespace {

std::string complex_text(Complex z) { return "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]"; }

std::string qubit_list(const std::vector<Qubit> &v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); k++) {
        if (k) {
            s += ", ";
        }
        s += std::to_string(v[k]);
    }
    return s + "]";
}

std::string gate_text(const Gate &g) {
    std::ostringstream out;
    out << "{\"kind\": \"" << gate_kind_name(g) << "\", ";
    if (const auto *u = std::get_if<OneQubitGate>(&g)) {
        out << "\"qubit\": " << u->qubit << ", \"matrix\": [";
        for (int k = 0; k < 4; k++) {
            out << (k ? ", " : "") << complex_text(u->matrix[k]);
        }
        out << "]";
    } else if (const auto *t = std::get_if<ToffoliGate>(&g)) {
        out << "\"controls\": " << qubit_list(t->controls) << ", \"target\": " << t->target;
    } else if (const auto *o = std::get_if<OrGate>(&g)) {
        out << "\"controls\": " << qubit_list(o->controls) << ", \"target\": " << o->target;
    } else if (const auto *r = std::get_if<RTensorGate>(&g)) {
        out << "\"factors\": [";
        for (std::size_t k = 0; k < r->factors.size(); k++) {
            const auto &f = r->factors[k];
            out << (k ? ", " : "") << "{\"qubit\": " << f.qubit << ", \"amp0\": " << complex_text(f.state.amp0)
                << ", \"amp1\": " << complex_text(f.state.amp1) << "}";
        }
        out << "]";
    } else if (const auto *f = std::get_if<FanoutGate>(&g)) {
        out << "\"source\": " << f->source << ", \"targets\": " << qubit_list(f->targets);
    }
    out << "}";
    return out.str();
}

[[noreturn]] void schema_error(const std::string &path, const std::string &what) {
    throw ParseError("circuit schema error at " + path + ": " + what, 0, 0);
}

const json &field(const json &obj, const char *name, const std::string &path) {
    if (!obj.is_object()) {
        schema_error(path, "expected an object");
    }
    auto it = obj.find(name);
    if (it == obj.end()) {
        schema_error(path, std::string("missing field '") + name + "'");
    }
    return *it;
}

Qubit as_qubit(const json &v, const std::string &path) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        schema_error(path, "expected a non-negative integer");
    }
    return static_cast<Qubit>(v.get<long long>());
}

std::vector<Qubit> as_qubits(const json &v, const std::string &path) {
    if (!v.is_array()) {
        schema_error(path, "expected an array of qubit indices");
    }
    std::vector<Qubit> out;
    for (std::size_t k = 0; k < v.size(); k++) {
        out.push_back(as_qubit(v[k], path + "[" + std::to_string(k) + "]"));
    }
    return out;
}

Complex as_complex(const json &v, const std::string &path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        schema_error(path, "expected a [re, im] pair");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Gate parse_gate(const json &g, const std::string &path) {
    const json &kind = field(g, "kind", path);
    if (!kind.is_string()) {
        schema_error(path + ".kind", "expected a string");
    }
    const std::string k = kind.get<std::string>();
    if (k == "u1") {
        const json &m = field(g, "matrix", path);
        if (!m.is_array() || m.size() != 4) {
            schema_error(path + ".matrix", "expected 4 complex entries");
        }
        Mat2 mat;
        for (int i = 0; i < 4; i++) {
            mat[i] = as_complex(m[i], path + ".matrix[" + std::to_string(i) + "]");
        }
        return OneQubitGate{as_qubit(field(g, "qubit", path), path + ".qubit"), mat};
    }
    if (k == "toffoli") {
        return ToffoliGate{as_qubits(field(g, "controls", path), path + ".controls"),
                           as_qubit(field(g, "target", path), path + ".target")};
    }
    if (k == "or") {
        return OrGate{as_qubits(field(g, "controls", path), path + ".controls"),
                      as_qubit(field(g, "target", path), path + ".target")};
    }
    if (k == "rtensor") {
        const json &fs = field(g, "factors", path);
        if (!fs.is_array()) {
            schema_error(path + ".factors", "expected an array");
        }
        std::vector<RTensorFactor> factors;
        for (std::size_t i = 0; i < fs.size(); i++) {
            const std::string fp = path + ".factors[" + std::to_string(i) + "]";
            factors.push_back({as_qubit(field(fs[i], "qubit", fp), fp + ".qubit"),
                               {as_complex(field(fs[i], "amp0", fp), fp + ".amp0"),
                                as_complex(field(fs[i], "amp1", fp), fp + ".amp1")}});
        }
        return make_rtensor(std::move(factors));
    }
    if (k == "fanout") {
        return FanoutGate{as_qubit(field(g, "source", path), path + ".source"),
                          as_qubits(field(g, "targets", path), path + ".targets")};
    }
    schema_error(path + ".kind", "unknown gate kind '" + k + "'");
}

void line_column(std::string_view text, std::size_t byte, std::size_t &line, std::size_t &col) {
    line = 1;
    col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); k++) {
        if (text[k] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
}

}  // namespace

std::string serialize_circuit(const Circuit &c) {
    std::ostringstream out;
    out << "{\n  \"num_qubits\": " << c.num_qubits() << ",\n  \"targets\": ";
    if (c.targets()) {
        out << qubit_list(*c.targets());
    } else {
        out << "null";
    }
    out << ",\n  \"layers\": [";
    for (std::size_t li = 0; li < c.layers().size(); li++) {
        out << (li ? ",\n" : "\n") << "    [";
        const auto &gates = c.layers()[li].gates;
        for (std::size_t gi = 0; gi < gates.size(); gi++) {
            out << (gi ? ",\n     " : "") << gate_text(gates[gi]);
        }
        out << "]";
    }
    out << (c.layers().empty() ? "]\n}\n" : "\n  ]\n}\n");
    return out.str();
}

Circuit deserialize_circuit(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        std::size_t line, col;
        line_column(text, e.byte == 0 ? 0 : e.byte - 1, line, col);
        throw ParseError("circuit parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                             ": " + e.what(),
                         line, col);
    }
    const json &nq = field(doc, "num_qubits", "$");
    if (!nq.is_number_integer() || nq.get<long long>() <= 0) {
        schema_error("$.num_qubits", "expected a positive integer");
    }
    Circuit c(static_cast<std::size_t>(nq.get<long long>()));
    const json &layers = field(doc, "layers", "$");
    if (!layers.is_array()) {
        schema_error("$.layers", "expected an array of layers");
    }
    for (std::size_t li = 0; li < layers.size(); li++) {
        const std::string lp = "$.layers[" + std::to_string(li) + "]";
        if (!layers[li].is_array()) {
            schema_error(lp, "expected an array of gates");
        }
        Layer layer;
        for (std::size_t gi = 0; gi < layers[li].size(); gi++) {
            layer.gates.push_back(parse_gate(layers[li][gi], lp + "[" + std::to_string(gi) + "]"));
        }
        c.append_layer(std::move(layer));
    }
    auto t = doc.find("targets");
    if (t != doc.end() && !t->is_null()) {
        c.set_targets(as_qubits(*t, "$.targets"));
    }
    return c;
}

Circuit read_circuit_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open circuit file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return deserialize_circuit(buf.str());
}

}  // namespace qacnek
