// Copyright 2026 The qdef Authors
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

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "qdef/experiment.hpp"
#include "qdef/io.hpp"

using namespace qdef;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string &args, const std::string &env = "") {
    const std::string cmd = env + " " + QDEF_CLI_PATH + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return {-1, ""};
    }
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, got);
    }
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qdef_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    void write(const std::string &name, const std::string &text) const { std::ofstream(path(name)) << text; }

    fs::path dir_;
};

} // namespace

TEST_F(CliTest, generate_is_deterministic) {
    ASSERT_EQ(run("generate --count 1 --dim 4 --seed 9 --out " + path("a.json")).status, 0);
    ASSERT_EQ(run("generate --count 1 --dim 4 --seed 9 --out " + path("b.json")).status, 0);
    const auto a = read_text_file(path("a.json"));
    EXPECT_EQ(a, read_text_file(path("b.json")));
    const auto sample = sample_from_json_text(a);
    ASSERT_EQ(sample.size(), 3u);
    for (const auto &lm : sample) {
        EXPECT_EQ(canonical(ground_truth_class(lm.matrix)), lm.label);
    }
}

TEST_F(CliTest, generate_to_stdout) {
    const auto r = run("generate --count 2 --dim 2 --seed 1");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(sample_from_json_text(r.out).size(), 6u);
}

TEST_F(CliTest, classify_identity) {
    write("id.json", R"({"entries": [[1, 0], [0, 1]]})");
    const auto r = run("classify " + path("id.json"));
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["class"], "PositiveDefinite");
    EXPECT_EQ(j["stage"], "Classical");
    EXPECT_EQ(j["truth"], "PositiveDefinite");
}

TEST_F(CliTest, classify_stdin) {
    const auto r = run("classify - < " + path("missing.json"));
    EXPECT_NE(r.status, 0);
    write("neg.json", R"({"entries": [[-1, 0], [0, -2]]})");
    const auto ok = run("classify - < " + path("neg.json"));
    ASSERT_EQ(ok.status, 0);
    EXPECT_EQ(json::parse(ok.out)["class"], "NegativeDefinite");
}

TEST_F(CliTest, exit_codes) {
    write("nh.json", R"({"entries": [[0, [0, 1]], [[0, 1], 0]]})");
    EXPECT_EQ(run("classify " + path("nh.json")).status, 2);
    write("bad.json", "{nope");
    EXPECT_EQ(run("classify " + path("bad.json")).status, 3);
    write("ns.json", R"({"entries": [[1, 2], [3]]})");
    EXPECT_EQ(run("classify " + path("ns.json")).status, 3);
    write("id.json", R"({"entries": [[1]]})");
    EXPECT_NE(run("classify --mode sideways " + path("id.json")).status, 0);
}

TEST_F(CliTest, three_by_three_matches_oracle_class) {
    std::mt19937_64 rng(31);
    for (const auto &spectrum : {std::vector<double>{0.02, 0.4, 0.9}, std::vector<double>{-0.7, -0.3, -0.05},
                                 std::vector<double>{-0.6, 0.1, 0.8}}) {
        const auto m = oracle::with_spectrum(spectrum, rng);
        write("m.json", matrix_to_json(m).dump());
        const auto r = run("classify --n 14 " + path("m.json"));
        ASSERT_EQ(r.status, 0);
        const auto j = json::parse(r.out);
        const auto truth = canonical(ground_truth_class(validate_hermitian(m)));
        EXPECT_EQ(canonical(definiteness_from_string(j["class"].get<std::string>())), truth);
        EXPECT_EQ(j["dim"], 3);
    }
}

TEST_F(CliTest, classify_array_emits_lines) {
    ASSERT_EQ(run("generate --count 2 --dim 4 --out " + path("s.json")).status, 0);
    const auto r = run("classify --mode classical " + path("s.json"));
    ASSERT_EQ(r.status, 0);
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        EXPECT_TRUE(json::parse(line).contains("class"));
        ++count;
    }
    EXPECT_EQ(count, 6);
}

TEST_F(CliTest, benchmark_csv_and_records) {
    const auto r = run("benchmark --count 4 --n 4,6 --delta 0.98 --records " + path("r.jsonl") + " --out " +
                       path("t.csv"));
    ASSERT_EQ(r.status, 0);
    const auto table = parse_csv(read_text_file(path("t.csv")));
    EXPECT_EQ(table.rows.size(), 4u);
    const auto records = read_text_file(path("r.jsonl"));
    EXPECT_EQ(std::count(records.begin(), records.end(), '\n'), 4 * 12);
}

TEST_F(CliTest, env_overrides_flags) {
    const auto r = run("benchmark --count 2 --delta 0.98 --mode quantum", "QDEF_N=5");
    ASSERT_EQ(r.status, 0);
    const auto table = parse_csv(r.out);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0].n, 5u);
}

TEST_F(CliTest, sweep_trials_rows) {
    const auto r = run("sweep-trials --count 3 --n 6 --trials 4 --init random,triple");
    ASSERT_EQ(r.status, 0);
    const auto table = parse_csv(r.out);
    ASSERT_EQ(table.rows.size(), 8u);
    EXPECT_EQ(table.rows[3].trials, 4u);
    EXPECT_EQ(table.rows[4].init, InitStrategy::FixedTriple);
}
