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

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qacnek/circuit_json.h"
#include "qacnek/cli.h"
#include "test_util.h"

namespace qacnek {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qacnek");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qacnek_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    std::string write_circuit(const std::string &name, const Circuit &c) const {
        const std::string p = path(name);
        std::ofstream(p) << serialize_circuit(c);
        return p;
    }

    fs::path dir_;
};

Circuit parity4() {
    Circuit c(4);
    c.append_layer({make_cnot(1, 0)});
    c.append_layer({make_cnot(2, 0)});
    c.append_layer({make_cnot(3, 0)});
    return c;
}

TEST(Fnv, KnownVectors) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST_F(CliTest, InfoOnParity) {
    const auto r = cli({"info", "--circuit", write_circuit("p.json", parity4())});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("size=3\n"), std::string::npos);
    EXPECT_NE(r.out.find("depth=3\n"), std::string::npos);
    EXPECT_NE(r.out.find("  layer 2: {0,3}\n"), std::string::npos);
}

TEST_F(CliTest, BuildFanoutTreeThenInfo) {
    const std::string out = path("fan.json");
    ASSERT_EQ(cli({"build", "fanout-tree", "--n", "9", "--m", "3", "--out", out}).code, kExitOk);
    const auto r = cli({"info", "--circuit", out});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("depth=2\n"), std::string::npos);
    EXPECT_NE(r.out.find("qubits=9\n"), std::string::npos);
}

TEST_F(CliTest, BuildNekomataReport) {
    const std::string out = path("nek.json");
    const std::string rep = path("nek.report.json");
    ASSERT_EQ(cli({"build", "nekomata", "--n", "2", "--depth", "2", "--epsilon", "0.15", "--M", "3", "--out", out,
                   "--report", rep})
                  .code,
              kExitOk);
    const auto j = nlohmann::json::parse(slurp(rep));
    EXPECT_EQ(j["M"].get<int>(), 3);
    EXPECT_LE(j["residual"].get<double>(), 1e-10);
    EXPECT_TRUE(j.contains("impurity_bound_exact"));
    EXPECT_EQ(deserialize_circuit(slurp(out)).num_qubits(), 8u);
}

TEST_F(CliTest, NormalFormThenCompare) {
    Rng rng(3);
    const std::string orig = write_circuit("orig.json", testing::random_qac_circuit(4, 3, rng));
    const std::string nf = path("nf.json");
    ASSERT_EQ(cli({"transform", "normal-form", "--circuit", orig, "--out", nf}).code, kExitOk);
    EXPECT_EQ(cli({"simulate", "--circuit", nf, "--compare", orig}).code, kExitOk);

    const std::string other = write_circuit("other.json", testing::random_qac_circuit(4, 3, rng));
    EXPECT_EQ(cli({"simulate", "--circuit", nf, "--compare", other}).code, kExitValidation);
}

TEST_F(CliTest, HadamardConjugateGivesFanout) {
    const std::string in = write_circuit("p.json", parity4());
    const std::string out = path("h.json");
    ASSERT_EQ(cli({"transform", "hadamard-conjugate", "--circuit", in, "--n", "4", "--out", out}).code, kExitOk);
    const auto r = cli({"simulate", "--circuit", out, "--input", "1000"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("1111"), std::string::npos) << r.out;
}

TEST_F(CliTest, UsageAndValidationExitCodes) {
    EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({"info"}).code, kExitUsage);
    EXPECT_EQ(cli({"build", "fanout-tree", "--n", "0"}).code, kExitUsage);

    const std::string bad = path("bad.json");
    std::ofstream(bad) << "{\"num_qubits\": 2, \"layers\": [[{\"kind\": \"swap\", \"qubits\": [0, 1]}]]}";
    EXPECT_EQ(cli({"info", "--circuit", bad}).code, kExitValidation);
    EXPECT_EQ(cli({"info", "--circuit", path("missing.json")}).code, kExitValidation);

    Circuit overlap(3);
    overlap.append_layer({make_cnot(0, 1), make_cnot(0, 2)});
    EXPECT_EQ(cli({"info", "--circuit", write_circuit("o.json", overlap)}).code, kExitValidation);
}

TEST_F(CliTest, ManifestBesideFirstOutput) {
    const std::string out = path("fan.json");
    ASSERT_EQ(cli({"build", "fanout-tree", "--n", "4", "--m", "2", "--out", out}).code, kExitOk);
    const auto m = nlohmann::json::parse(slurp(out + ".manifest.json"));
    EXPECT_EQ(m["exit_code"].get<int>(), 0);
    EXPECT_EQ(m["tool_version"].get<std::string>(), kToolVersion);
    ASSERT_EQ(m["outputs"].size(), 1u);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(slurp(out))));
    EXPECT_EQ(m["outputs"][0]["fnv1a64"].get<std::string>(), hex);
    EXPECT_TRUE(m.contains("wall_clock_seconds"));
    EXPECT_TRUE(m["command_line"].is_array());

    const std::string explicit_path = path("run.manifest");
    ASSERT_EQ(cli({"--manifest", explicit_path, "info", "--circuit", out}).code, kExitOk);
    const auto m2 = nlohmann::json::parse(slurp(explicit_path));
    ASSERT_EQ(m2["inputs"].size(), 1u);
    EXPECT_EQ(m2["inputs"][0]["path"].get<std::string>(), out);
}

TEST_F(CliTest, SampleIsReproducible) {
    const std::string c = path("cat.json");
    ASSERT_EQ(cli({"build", "cat", "--n", "5", "--m", "2", "--out", c}).code, kExitOk);
    const std::string a = path("a.csv");
    const std::string b = path("b.csv");
    ASSERT_EQ(cli({"sample", "--circuit", c, "--trials", "500", "--seed", "9", "--out", a}).code, kExitOk);
    ASSERT_EQ(cli({"sample", "--circuit", c, "--trials", "500", "--seed", "9", "--out", b}).code, kExitOk);
    const std::string text = slurp(a);
    EXPECT_EQ(text, slurp(b));
    EXPECT_EQ(text.rfind("trial,bitstring,weight\n", 0), 0u);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        rows++;
        EXPECT_TRUE(line.find(",00000,0") != std::string::npos || line.find(",11111,5") != std::string::npos) << line;
    }
    EXPECT_EQ(rows, 500u);
    const auto m = nlohmann::json::parse(slurp(a + ".manifest.json"));
    EXPECT_EQ(m["seed"].get<std::uint64_t>(), 9u);
}

TEST_F(CliTest, VerifySuite) {
    const std::string rep = path("v.json");
    ASSERT_EQ(cli({"verify", "--suite", "markov", "--seed", "1", "--report", rep}).code, kExitOk);
    const auto j = nlohmann::json::parse(slurp(rep));
    EXPECT_TRUE(j.dump().find("\"passed\":true") != std::string::npos);
    EXPECT_EQ(suite_seed(1, "markov"), suite_seed(1, "markov"));
    EXPECT_NE(suite_seed(1, "markov"), suite_seed(1, "turan"));
}

TEST_F(CliTest, BinaryExitCodes) {
    const std::string tool = QACNEK_TOOL_PATH;
    const std::string in = write_circuit("p.json", parity4());
    int st = std::system((tool + " info --circuit " + in + " > /dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(st), 0);
    st = std::system((tool + " info > /dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(st), 2);
    st = std::system((tool + " info --circuit " + path("nope.json") + " > /dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(st), 1);
}

}  // namespace
}  // namespace qacnek
