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

#include "qacnek/cli.h"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qacnek/circuit_json.h"
#include "qacnek/classical_sim.h"
#include "qacnek/kernels.h"
#include "qacnek/nekomata.h"
#include "qacnek/state_vector.h"
#include "qacnek/transforms.h"

namespace qacnek {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_file_atomic(const std::string &path, const std::string &contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        f << contents;
        f.flush();
        if (!f) {
            throw std::runtime_error("short write to " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
    }
}

namespace {

std::string hex64(std::uint64_t v) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << v;
    return s.str();
}

// Everything a command reads or writes goes through here so the manifest
// sees it.
class Session {
   public:
    Session(std::vector<std::string> argv, std::ostream &out, std::ostream &err)
        : argv_(std::move(argv)), out_(out), err_(err), start_(std::chrono::steady_clock::now()) {}

    std::string read(const std::string &path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) {
            throw std::invalid_argument("cannot read " + path);
        }
        std::ostringstream s;
        s << f.rdbuf();
        inputs_.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a64(s.str()))}});
        return s.str();
    }

    Circuit read_circuit(const std::string &path) { return deserialize_circuit(read(path)); }

    /// "-" (or empty) means the output stream.
    void emit(const std::string &path, const std::string &contents) {
        if (path.empty() || path == "-") {
            out_ << contents;
            return;
        }
        write_file_atomic(path, contents);
        outputs_.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a64(contents))}});
        if (!first_output_) {
            first_output_ = path;
        }
    }

    void set_seed(std::uint64_t s) { seed_ = s; }
    std::ostream &out() { return out_; }
    std::ostream &err() { return err_; }

    /// Next to the first output file, or on the error stream when nothing
    /// was written.
    void finish(const std::string &manifest_path, int exit_code) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json m;
        m["command_line"] = argv_;
        m["seed"] = seed_ ? json(*seed_) : json(nullptr);
        m["tool_version"] = kToolVersion;
        m["inputs"] = inputs_;
        m["outputs"] = outputs_;
        m["wall_clock_seconds"] = secs;
        m["exit_code"] = exit_code;
        std::string path = manifest_path;
        if (path.empty() && first_output_) {
            path = *first_output_ + ".manifest.json";
        }
        if (path.empty()) {
            err_ << m.dump() << "\n";
        } else {
            write_file_atomic(path, m.dump(2) + "\n");
        }
    }

   private:
    std::vector<std::string> argv_;
    std::ostream &out_;
    std::ostream &err_;
    std::chrono::steady_clock::time_point start_;
    std::optional<std::uint64_t> seed_;
    json inputs_ = json::array();
    json outputs_ = json::array();
    std::optional<std::string> first_output_;
};

json double_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// ---- build ----

struct BuildOpts {
    std::string kind;
    std::size_t n = 0;
    std::size_t depth = 2;
    double epsilon = 0.1;
    std::optional<std::uint64_t> M;
    std::optional<double> delta;
    std::size_t m = 2;
    std::string constructor;
    std::string out = "-";
    std::string report;
};

int cmd_build(Session &s, const BuildOpts &o) {
    Circuit c;
    json report;
    if (o.kind == "nekomata") {
        const auto b = build_depthd_nekomata(o.n, o.depth, o.epsilon, DepthDOverrides{o.M, o.delta});
        c = b.circuit;
        const auto imp = impurity_bound(b.core.n, b.core.M, b.core.delta);
        report = {{"n", o.n},
                  {"depth", o.depth},
                  {"core_targets", b.core_targets},
                  {"M", b.core.M},
                  {"delta", b.core.delta},
                  {"epsilon", o.M ? json(nullptr) : json(o.epsilon)},
                  {"residual", b.core.residual},
                  {"impurity_bound_exact", double_json(imp.exact)},
                  {"impurity_bound_relaxed", double_json(imp.relaxed)},
                  {"num_qubits", c.num_qubits()},
                  {"size", circuit_size(c)},
                  {"circuit_depth", circuit_depth(c)}};
    } else if (o.kind == "fanout-tree") {
        c = fanout_tree(o.n, o.m);
    } else if (o.kind == "cat") {
        c = cat_from_restricted_fanout(fanout_tree(o.n, o.m), o.n);
    } else {
        const Circuit ctor = o.constructor.empty() ? cat_from_restricted_fanout(fanout_tree(o.n, o.m), o.n)
                                                   : s.read_circuit(o.constructor);
        c = parity_from_nekomata(ctor, o.n);
    }
    s.emit(o.out, serialize_circuit(c));
    if (!report.is_null()) {
        const std::string text = report.dump(2) + "\n";
        if (!o.report.empty()) {
            s.emit(o.report, text);
        } else if (o.out != "-") {
            s.out() << text;
        }
    }
    return kExitOk;
}

// ---- transform ----

int cmd_transform(Session &s, const std::string &kind, const std::string &in, const std::string &out,
                  std::optional<std::size_t> n) {
    const Circuit c = s.read_circuit(in);
    Circuit r;
    if (kind == "normal-form") {
        r = to_rtensor_normal_form(c);
    } else if (kind == "expand-or") {
        r = expand_or(c);
    } else {
        r = conjugate_by_hadamards(c, n ? *n : c.target_list().size());
    }
    s.emit(out, serialize_circuit(r));
    return kExitOk;
}

// ---- simulate ----

int cmd_simulate(Session &s, const std::string &in, const std::string &input_bits, const std::string &compare,
                 double tol, const std::string &state_out) {
    const Circuit c = s.read_circuit(in);
    if (!compare.empty()) {
        const Circuit other = s.read_circuit(compare);
        if (other.num_qubits() != c.num_qubits()) {
            throw std::invalid_argument("circuits act on different numbers of qubits");
        }
        const double diff = (unitary_matrix(c) - unitary_matrix(other)).cwiseAbs().maxCoeff();
        const bool equal = diff <= tol;
        const json r{{"max_abs_difference", diff}, {"tolerance", tol}, {"equal", equal}};
        s.out() << r.dump(2) << "\n";
        return equal ? kExitOk : kExitValidation;
    }
    const StateVector init =
        input_bits.empty() ? StateVector(c.num_qubits()) : StateVector::from_bits(input_bits);
    if (init.num_qubits() != c.num_qubits()) {
        throw std::invalid_argument("input bitstring length does not match the circuit");
    }
    const StateVector out = run(c, init);
    const auto targets = c.target_list();
    const auto dist = measurement_distribution(out, targets);
    json r;
    r["targets"] = targets;
    json d = json::object();
    for (const auto &[bits, p] : dist.as_map(1e-15)) {
        d[bits] = p;
    }
    r["distribution"] = d;
    s.out() << r.dump(2) << "\n";
    if (!state_out.empty()) {
        s.emit(state_out, state_to_json(out));
    }
    return kExitOk;
}

// ---- sample ----

int cmd_sample(Session &s, const std::string &in, std::uint64_t trials, std::uint64_t seed,
               const std::string &sampler, const std::string &out, const std::string &summary) {
    s.set_seed(seed);
    const Circuit c = s.read_circuit(in);
    const SamplerKind kind = sampler == "appendix-b" ? SamplerKind::kAppendixB : SamplerKind::kDirect;
    const auto st = hamming_stats(c, trials, seed, kind, true);

    std::string csv = "trial,bitstring,weight\n";
    for (std::uint64_t t = 0; t < trials; t++) {
        csv += std::to_string(t) + "," + bits_to_string(st.samples[t]) + "," + std::to_string(st.weights[t]) + "\n";
    }
    s.emit(out, csv);

    json tails = json::array();
    for (const auto &row : st.tails) {
        tails.push_back({{"epsilon", row.epsilon},
                         {"bound", row.bound},
                         {"slack", row.slack},
                         {"upper", row.upper},
                         {"lower", row.lower},
                         {"holds", row.holds}});
    }
    const json sum{{"n", st.n},       {"trials", st.trials}, {"seed", seed},     {"sampler", sampler},
                   {"r", st.r},       {"mean", st.mean},     {"variance", st.variance}, {"tails", tails}};
    const std::string text = sum.dump(2) + "\n";
    if (!summary.empty()) {
        s.emit(summary, text);
    } else if (out != "-") {
        s.out() << text;
    } else {
        s.err() << text;
    }
    return kExitOk;
}

// ---- verify ----

int cmd_verify(Session &s, const std::string &suite, std::uint64_t seed, const std::string &report) {
    s.set_seed(seed);
    json r;
    r["seed"] = seed;
    r["suites"] = json::array();
    bool passed = true;
    for (const auto &name : kSuites) {
        if (suite != "all" && suite != name) {
            continue;
        }
        json one = run_verify_suite(name, seed);
        passed = passed && one["passed"].get<bool>();
        s.err() << name << ": " << (one["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
        r["suites"].push_back(std::move(one));
    }
    r["passed"] = passed;
    s.emit(report, r.dump(2) + "\n");
    return passed ? kExitOk : kExitValidation;
}

// ---- info ----

int cmd_info(Session &s, const std::string &in) {
    const Circuit c = s.read_circuit(in);
    const auto problems = validate(c);
    auto &o = s.out();
    o << "qubits=" << c.num_qubits() << "\n";
    o << "size=" << circuit_size(c) << "\n";
    o << "depth=" << circuit_depth(c) << "\n";
    o << "layers=" << c.layers().size() << "\n";
    o << "targets=";
    const auto t = c.target_list();
    for (std::size_t i = 0; i < t.size(); i++) {
        o << (i ? "," : "") << t[i];
    }
    o << "\ntopology:\n";
    for (const auto &e : circuit_topology(c)) {
        o << "  layer " << e.layer_index << ": {";
        for (std::size_t i = 0; i < e.support.size(); i++) {
            o << (i ? "," : "") << e.support[i];
        }
        o << "}\n";
    }
    for (const auto &p : problems) {
        s.err() << "invalid: " << p << "\n";
    }
    return problems.empty() ? kExitOk : kExitValidation;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    kernels::configure_threads_from_env();
    CLI::App app{"Low-depth QAC circuit constructions and checks", "qacnek"};
    app.require_subcommand(1);
    std::string manifest;
    app.add_option("--manifest", manifest, "Where to write the run manifest");
    app.set_version_flag("--version", kToolVersion);

    BuildOpts bo;
    auto *build = app.add_subcommand("build", "Build a circuit");
    build->add_option("kind", bo.kind)->required()->check(
        CLI::IsMember({"nekomata", "fanout-tree", "parity-from-nekomata", "cat"}));
    build->add_option("--n", bo.n, "Number of targets")->required()->check(CLI::PositiveNumber);
    build->add_option("--depth", bo.depth, "Nekomata depth (>= 2)");
    build->add_option("--epsilon", bo.epsilon, "Nekomata error parameter");
    build->add_option("--M", bo.M, "Override the number of ancilla columns");
    build->add_option("--delta", bo.delta, "Override the factor weight");
    build->add_option("--m", bo.m, "Fanout arity")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    build->add_option("--constructor", bo.constructor, "Nekomata constructor circuit (default: exact cat)");
    build->add_option("--out", bo.out, "Circuit output (- for stdout)");
    build->add_option("--report", bo.report, "Parameter report output");

    std::string tkind, tin, tout = "-";
    std::optional<std::size_t> tn;
    auto *transform = app.add_subcommand("transform", "Rewrite a circuit");
    transform->add_option("kind", tkind)->required()->check(
        CLI::IsMember({"normal-form", "expand-or", "hadamard-conjugate"}));
    transform->add_option("--circuit", tin)->required();
    transform->add_option("--out", tout);
    transform->add_option("--n", tn, "Hadamard-conjugated prefix (default: number of targets)");

    std::string sin, sinput, scompare, sstate;
    double stol = 1e-9;
    auto *simulate = app.add_subcommand("simulate", "Exact state-vector simulation");
    simulate->add_option("--circuit", sin)->required();
    simulate->add_option("--input", sinput, "Input basis bitstring (default all zeros)");
    simulate->add_option("--compare", scompare, "Compare unitaries with another circuit");
    simulate->add_option("--tol", stol);
    simulate->add_option("--state-out", sstate, "Write the output state as JSON");

    std::string pin, psampler = "direct", pout = "-", psummary;
    std::uint64_t ptrials = 1000, pseed = 0;
    auto *sample = app.add_subcommand("sample", "Sample target measurements of a mostly classical circuit");
    sample->add_option("--circuit", pin)->required();
    sample->add_option("--trials", ptrials)->check(CLI::PositiveNumber);
    sample->add_option("--seed", pseed);
    sample->add_option("--sampler", psampler)->check(CLI::IsMember({"direct", "appendix-b"}));
    sample->add_option("--out", pout, "CSV output");
    sample->add_option("--summary", psummary, "Summary JSON output");

    std::string vsuite = "all", vreport = "-";
    std::uint64_t vseed = 0;
    auto *verify = app.add_subcommand("verify", "Run randomized verification suites");
    std::vector<std::string> suites = kSuites;
    suites.push_back("all");
    verify->add_option("--suite", vsuite)->check(CLI::IsMember(suites));
    verify->add_option("--seed", vseed);
    verify->add_option("--report", vreport);

    std::string iin;
    auto *info = app.add_subcommand("info", "Print size, depth and topology");
    info->add_option("--circuit", iin)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    std::vector<std::string> args(argv, argv + argc);
    Session s(args, out, err);
    int code = kExitOk;
    try {
        if (*build) {
            code = cmd_build(s, bo);
        } else if (*transform) {
            code = cmd_transform(s, tkind, tin, tout, tn);
        } else if (*simulate) {
            code = cmd_simulate(s, sin, sinput, scompare, stol, sstate);
        } else if (*sample) {
            code = cmd_sample(s, pin, ptrials, pseed, psampler, pout, psummary);
        } else if (*verify) {
            code = cmd_verify(s, vsuite, vseed, vreport);
        } else if (*info) {
            code = cmd_info(s, iin);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        code = kExitValidation;
    }
    try {
        s.finish(manifest, code);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        code = kExitValidation;
    }
    return code;
}

}  // namespace qacnek
