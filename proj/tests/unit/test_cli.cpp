// Copyright 2026 The ncpt Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "ncpt/io.hpp"

namespace ncpt::cli {
namespace {

namespace fs = std::filesystem;

std::string data(const std::string& name) { return std::string(NCPT_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ncpt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    CommandOptions opts(const std::string& config, const std::string& sub = "out") {
        CommandOptions o;
        o.config = config;
        o.out = (dir_ / sub).string();
        return o;
    }
    fs::path write(const std::string& name, const std::string& text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

TEST_F(CliTest, SimulateWritesOneRowPerRunDeterministically) {
    CommandOptions a = opts("", "a");
    a.runs = 100;
    a.seed = 1;
    ASSERT_EQ(cmd_simulate(a, out_, err_), kOk) << err_.str();
    auto rows = io::parse_csv(slurp(fs::path(a.out) / "runs.csv"));
    EXPECT_EQ(rows.size(), 101U);
    EXPECT_EQ(rows[0][0], "h");

    CommandOptions b = opts("", "b");
    b.runs = 100;
    b.seed = 1;
    b.threads = 4;
    ASSERT_EQ(cmd_simulate(b, out_, err_), kOk);
    EXPECT_EQ(slurp(fs::path(a.out) / "runs.csv"), slurp(fs::path(b.out) / "runs.csv"));
    EXPECT_EQ(slurp(fs::path(a.out) / "counts.json"), slurp(fs::path(b.out) / "counts.json"));
    EXPECT_NE(out_.str().find("runs=100"), std::string::npos);
}

TEST_F(CliTest, SimulateCountsOnlyMatchesFullOutput) {
    CommandOptions a = opts(data("reference_sim.json"), "a");
    a.runs = 2000;
    ASSERT_EQ(cmd_simulate(a, out_, err_), kOk) << err_.str();
    CommandOptions b = a;
    b.out = (dir_ / "b").string();
    b.counts_only = true;
    ASSERT_EQ(cmd_simulate(b, out_, err_), kOk);
    EXPECT_EQ(slurp(fs::path(a.out) / "counts.json"), slurp(fs::path(b.out) / "counts.json"));
    EXPECT_FALSE(fs::exists(fs::path(b.out) / "runs.csv"));
}

TEST_F(CliTest, SimulateExitCodes) {
    auto bad = write("bad.json", "{ not json");
    EXPECT_EQ(cmd_simulate(opts(bad.string()), out_, err_), kInputError);
    auto degenerate = write("degenerate.json", R"({"observers": [{"pmf_h0": [0.5, 0.5, 0.0], "pmf_h1": [0.4, 0.6, 0.0]}],
                                                  "preference": [1], "runs": 10})");
    EXPECT_EQ(cmd_simulate(opts(degenerate.string()), out_, err_), kInsufficientData);
}

TEST_F(CliTest, EstimateReproducesFixtureCells) {
    CommandOptions o = opts(data("conditional_counts.json"));
    EXPECT_EQ(cmd_estimate(o, out_, err_), kInsufficientData);
    auto rows = io::parse_csv(slurp(fs::path(o.out) / "conditionals_h0.csv"));
    ASSERT_EQ(rows.size(), 9U);
    EXPECT_EQ(rows[4][0], "T_E1∘T_E2");
    EXPECT_NEAR(std::stod(rows[4][2]), 0.4628, 1e-12);
    EXPECT_EQ(rows[8][0], "T_E2∘T_E1");
    EXPECT_NEAR(std::stod(rows[8][2]), 0.3905, 1e-12);
    auto report = io::read_json_file((fs::path(o.out) / "order_effects.json").string());
    EXPECT_TRUE(report["significant_any"].get<bool>());
}

TEST_F(CliTest, EstimateSingleSequenceTableGivesZeroOneCells) {
    auto table = write("single.json", R"({"counts": {"0": {"D1=1,D2=1,D3=1": 5}, "1": {"D1=1,D2=1,D3=1": 5}}})");
    CommandOptions o = opts(table.string());
    EXPECT_EQ(cmd_estimate(o, out_, err_), kInsufficientData);
    auto rows = io::parse_csv(slurp(fs::path(o.out) / "conditionals_h1.csv"));
    EXPECT_EQ(rows[8][1], "0");
    EXPECT_EQ(rows[8][2], "1");
}

TEST_F(CliTest, OrdersOnTwoOrderExample) {
    CommandOptions o = opts(data("two_order_example.json"));
    ASSERT_EQ(cmd_orders(o, out_, err_), kOk) << err_.str();
    auto rows = io::parse_csv(slurp(fs::path(o.out) / "orders.csv"));
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_NEAR(std::stod(rows[1][1]), 0.35, 1e-9);
    EXPECT_NEAR(std::stod(rows[2][1]), 0.266, 1e-9);
    auto report = io::read_json_file((fs::path(o.out) / "orders.json").string());
    EXPECT_EQ(report["best"], "Y2,Y1");
    auto dist = io::parse_csv(slurp(fs::path(o.out) / "distributions.csv"));
    EXPECT_EQ(dist[0][0], "[Y1,Y2]");
    EXPECT_EQ(dist[0][3], "[Y2,Y1]");
}

TEST_F(CliTest, OrdersUniformDistributionsAndPriorOverride) {
    std::string uniform = R"({"orders": [)";
    for (int i = 0; i < 3; ++i) {
        uniform += std::string(i ? "," : "") + R"({"order": [)" + std::to_string(i + 1) +
                   R"(], "p0": [0.5, 0.5], "p1": [0.5, 0.5], "outcomes": ["0", "1"]})";
    }
    uniform += "]}";
    CommandOptions o = opts(write("uniform.json", uniform).string());
    o.priors = std::make_pair(0.3, 0.7);
    ASSERT_EQ(cmd_orders(o, out_, err_), kOk) << err_.str();
    auto rows = io::parse_csv(slurp(fs::path(o.out) / "orders.csv"));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_NEAR(std::stod(rows[i][1]), 0.3, 1e-15);
    }
}

TEST_F(CliTest, OrdersNeedsEveryOrder) {
    CommandOptions o = opts(data("conditional_counts.json"));
    EXPECT_EQ(cmd_orders(o, out_, err_), kInsufficientData);
}

TEST_F(CliTest, DetectSolvesExample) {
    CommandOptions o = opts(data("detect_y2_then_y1.json"));
    ASSERT_EQ(cmd_detect(o, out_, err_), kOk) << err_.str();
    auto report = io::read_json_file((fs::path(o.out) / "detect.json").string());
    EXPECT_NEAR(report["classical"]["error"].get<double>(), 0.266, 1e-9);
    EXPECT_NEAR(report["pvm"]["error"].get<double>(), 0.266, 1e-9);
    EXPECT_TRUE(report["holevo_conditions"].get<bool>());
}

TEST_F(CliTest, AxiomsPassOnModelsAndFailOnCorruptedSpec) {
    EXPECT_EQ(cmd_axioms(opts(data("rank_one_model.json"), "q"), out_, err_), kOk) << err_.str();
    EXPECT_EQ(cmd_axioms(opts(data("classical_model.json"), "c"), out_, err_), kOk) << err_.str();
    CommandOptions bad = opts(data("corrupted_model.json"), "bad");
    EXPECT_EQ(cmd_axioms(bad, out_, err_), kPropertyFailure);
    auto report = io::read_json_file((fs::path(bad.out) / "axioms.json").string());
    EXPECT_FALSE(report["all_passed"].get<bool>());
    EXPECT_EQ(report["checks"][0]["axiom"], "event.projection");
    EXPECT_NE(report["checks"][0]["instance"].get<std::string>().find("Projection.idempotent"), std::string::npos);
}

TEST_F(CliTest, StateExistsVerdicts) {
    CommandOptions sym = opts(data("povm_symmetric.json"), "sym");
    ASSERT_EQ(cmd_state_exists(sym, out_, err_), kOk) << err_.str();
    EXPECT_EQ(io::read_json_file((fs::path(sym.out) / "state_exists.json").string())["verdict"], "Feasible");

    CommandOptions scalar = opts(data("povm_scalar.json"), "scalar");
    ASSERT_EQ(cmd_state_exists(scalar, out_, err_), kOk);
    EXPECT_EQ(io::read_json_file((fs::path(scalar.out) / "state_exists.json").string())["verdict"], "Certificate");

    CommandOptions over = opts(data("povm_symmetric.json"), "over");
    over.target = std::vector<double>{0.82, 0.18};
    ASSERT_EQ(cmd_state_exists(over, out_, err_), kOk);
    EXPECT_EQ(io::read_json_file((fs::path(over.out) / "state_exists.json").string())["verdict"], "Feasible");

    auto malformed = write("malformed.json", R"({"elements": [[[1.0, 0.0], [0.0, 0.5]]], "target": [1.0]})");
    EXPECT_EQ(cmd_state_exists(opts(malformed.string()), out_, err_), kInputError);
}

TEST_F(CliTest, MissingInputIsAnInputError) {
    EXPECT_EQ(cmd_estimate(opts(""), out_, err_), kInputError);
    EXPECT_EQ(cmd_orders(opts((dir_ / "absent.json").string()), out_, err_), kInputError);
}

}  // namespace
}  // namespace ncpt::cli
