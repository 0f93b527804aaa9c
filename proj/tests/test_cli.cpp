#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "pacdyn/io.hpp"

namespace fs = std::filesystem;
using namespace pacdyn;
using namespace pacdyn::cli;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        root_ = fs::temp_directory_path() /
                ("pacdyn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    std::string write_config(const std::string& text) {
        const fs::path p = root_ / "config.json";
        std::ofstream(p) << text;
        return p.string();
    }

    int run_ex1(const fs::path& out_dir, long steps) {
        RunOptions o;
        o.config_path = write_config(R"({"example":"ex1","N":16})");
        o.out_dir = out_dir.string();
        o.max_steps = steps;
        o.quiet = true;
        return cmd_run(o, out_, err_);
    }

    fs::path root_;
    std::ostringstream out_, err_;
};

std::vector<std::string> lines_of(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

} // namespace

TEST_F(CliTest, RunWritesSeriesSnapshotsAndManifest) {
    const fs::path dir = root_ / "run";
    ASSERT_EQ(run_ex1(dir, 10), kOk) << err_.str();

    const auto series = lines_of(dir / "series.csv");
    ASSERT_EQ(series.size(), 12u);  // header + initial record + 10 steps
    EXPECT_EQ(series[0], kSeriesHeader);

    EXPECT_TRUE(fs::exists(dir / "snap_0.csv"));
    EXPECT_TRUE(fs::exists(dir / "snap_10.csv"));
    const Snapshot last = read_snapshot_file((dir / "snap_10.csv").string());
    EXPECT_EQ(last.N, 16);
    EXPECT_EQ(last.step, 10);

    std::ifstream mf(dir / "manifest.json");
    const nlohmann::json m = nlohmann::json::parse(mf);
    EXPECT_EQ(m["exit_reason"], "max_steps");
    EXPECT_EQ(m["steps"], 10);
    EXPECT_EQ(m["config"]["N"], 16);
    EXPECT_EQ(m["config"]["max_steps"], 10);
    EXPECT_EQ(m["grid"]["N"], 16);
    EXPECT_EQ(m["bound_exceeded"], false);
    EXPECT_EQ(m["snapshots"].size(), 2u);
    EXPECT_TRUE(m.contains("started"));
    EXPECT_TRUE(m.contains("finished"));
}

TEST_F(CliTest, UnreadableConfigCreatesNothing) {
    RunOptions o;
    o.config_path = (root_ / "missing.json").string();
    o.out_dir = (root_ / "never").string();
    EXPECT_EQ(cmd_run(o, out_, err_), kConfigError);
    EXPECT_FALSE(fs::exists(root_ / "never"));
    EXPECT_NE(err_.str().find("config error"), std::string::npos);
}

TEST_F(CliTest, InvalidConfigIsAConfigError) {
    RunOptions o;
    o.out_dir = (root_ / "never").string();
    o.config_path = write_config(R"({"example":"ex1","N":3})");
    EXPECT_EQ(cmd_run(o, out_, err_), kConfigError);
    o.config_path = write_config(R"({"example":"ex1","colour":"red"})");
    EXPECT_EQ(cmd_run(o, out_, err_), kConfigError);
    EXPECT_NE(err_.str().find("colour"), std::string::npos);
    EXPECT_FALSE(fs::exists(root_ / "never"));
}

TEST_F(CliTest, SolverFailureExitCode) {
    RunOptions o;
    o.config_path = write_config(R"({"example":"ex1","N":16,"dt":0.1,"linear_max_iter":1})");
    o.out_dir = (root_ / "run").string();
    o.max_steps = 3;
    o.quiet = true;
    EXPECT_EQ(cmd_run(o, out_, err_), kSolverError);
    std::ifstream mf(root_ / "run" / "manifest.json");
    const nlohmann::json m = nlohmann::json::parse(mf);
    EXPECT_EQ(m["exit_reason"], "error");
    EXPECT_TRUE(m.contains("error"));
}

TEST_F(CliTest, VerifyFreshRun) {
    const fs::path dir = root_ / "run";
    ASSERT_EQ(run_ex1(dir, 20), kOk);
    std::ostringstream out, err;
    EXPECT_EQ(cmd_verify({dir.string()}, out, err), kOk) << out.str() << err.str();
    EXPECT_NE(out.str().find("PASS"), std::string::npos);
}

TEST_F(CliTest, VerifyFlagsEnergyIncrease) {
    const fs::path dir = root_ / "run";
    ASSERT_EQ(run_ex1(dir, 10), kOk);
    auto rows = lines_of(dir / "series.csv");
    // Raise the total energy of the record for step 6 above its predecessor.
    auto fields = [](const std::string& line) {
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        return f;
    };
    auto f = fields(rows[7]);
    ASSERT_EQ(f[0], "6");
    f[6] = std::to_string(std::stod(fields(rows[6])[6]) + 1.0);
    std::string edited;
    for (std::size_t k = 0; k < f.size(); ++k) edited += (k ? "," : "") + f[k];
    rows[7] = edited;
    {
        std::ofstream os(dir / "series.csv");
        for (const auto& r : rows) os << r << '\n';
    }
    std::ostringstream out, err;
    EXPECT_EQ(cmd_verify({dir.string()}, out, err), kVerifyFailed);
    EXPECT_NE(out.str().find("energy increased at step 6"), std::string::npos) << out.str();
    EXPECT_NE(out.str().find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyFlagsMassDrift) {
    const fs::path dir = root_ / "run";
    ASSERT_EQ(run_ex1(dir, 5), kOk);
    VerifyOptions strict{dir.string(), 1e-8};
    auto rows = lines_of(dir / "series.csv");
    const auto first = rows[4].find(',', rows[4].find(',') + 1);
    const auto second = rows[4].find(',', first + 1);
    rows[4] = rows[4].substr(0, first + 1) + "0.001" + rows[4].substr(second);
    {
        std::ofstream os(dir / "series.csv");
        for (const auto& r : rows) os << r << '\n';
    }
    std::ostringstream out, err;
    EXPECT_EQ(cmd_verify(strict, out, err), kVerifyFailed);
    EXPECT_NE(out.str().find("mass drift first exceeds tolerance at step 3"), std::string::npos) << out.str();
}

TEST_F(CliTest, VerifyEmptyDirectoryIsIoError) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_verify({root_.string()}, out, err), kIoError);
    EXPECT_NE(err.str().find("missing file"), std::string::npos);
}

TEST_F(CliTest, ListExamples) {
    std::ostringstream text;
    EXPECT_EQ(cmd_list_examples(false, text), kOk);
    for (const char* name : {"ex1", "ex2", "ex3", "ex4_30", "ex4_150"}) {
        EXPECT_NE(text.str().find(name), std::string::npos) << name;
    }

    std::ostringstream js;
    EXPECT_EQ(cmd_list_examples(true, js), kOk);
    std::istringstream in(js.str());
    int count = 0;
    for (std::string line; std::getline(in, line); ++count) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["defaults"]["dt"], 0.001);
        EXPECT_TRUE(j.contains("name"));
    }
    EXPECT_EQ(count, 5);
}

TEST_F(CliTest, ArgumentParsing) {
    auto call = [](std::vector<std::string> args) {
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        return main_entry(static_cast<int>(argv.size()), argv.data());
    };
    EXPECT_EQ(call({"pacdyn"}), kConfigError);
    EXPECT_EQ(call({"pacdyn", "run"}), kConfigError);
    EXPECT_EQ(call({"pacdyn", "run", "--config", (root_ / "absent.json").string()}), kConfigError);
    EXPECT_EQ(call({"pacdyn", "list-examples", "--json"}), kOk);
    EXPECT_EQ(call({"pacdyn", "verify", "--run", root_.string()}), kIoError);

    const std::string cfg = write_config(R"({"example":"ex3","N":8})");
    const std::string out = (root_ / "viaargs").string();
    EXPECT_EQ(call({"pacdyn", "run", "--config", cfg, "--out", out, "--max-steps", "3", "--snapshot-every", "2",
                    "--quiet"}),
              kOk);
    EXPECT_TRUE(fs::exists(fs::path(out) / "snap_2.csv"));
    EXPECT_TRUE(fs::exists(fs::path(out) / "snap_3.csv"));
    EXPECT_EQ(lines_of(fs::path(out) / "series.csv").size(), 5u);
}
