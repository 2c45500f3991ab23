#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pancyclic/cli.hpp"

namespace fs = std::filesystem;
using namespace pancyclic;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("pancyclic_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ConstructThenVerify) {
    const auto a6 = path("a6.g6");
    EXPECT_EQ(run({"construct", "--family", "A", "--k", "2", "--out", a6}).code, 0);
    EXPECT_EQ(run({"verify", "--in", a6, "--property", "kproper", "--k", "3"}).code, 0);
    auto four = run({"verify", "--in", a6, "--property", "kproper", "--k", "4"});
    EXPECT_EQ(four.code, 1);
    EXPECT_NE(four.out.find("edge 1,4, length 4"), std::string::npos);
}

TEST_F(CliTest, CycleFailsEdgePancyclicity) {
    const auto c6 = path("c6.g6");
    ASSERT_EQ(run({"construct", "--family", "cycle", "--k", "6", "--out", c6}).code, 0);
    const auto rep = path("r.json");
    EXPECT_EQ(run({"verify", "--in", c6, "--property", "ep", "--report", rep}).code, 1);
    auto j = json::parse(slurp(rep));
    EXPECT_EQ(j["exit_code"], 1);
    EXPECT_EQ(j["outcome"]["first_failure"]["length"], 3);
    EXPECT_EQ(j["outcome"]["verdict"], "fail");
}

TEST_F(CliTest, FormulaValue) {
    auto r = run({"bounds", "--formula", "7n4", "--n", "9"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "16\n");
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"bounds", "--formula", "nope", "--n", "9"}).code, 2);
    EXPECT_EQ(run({"construct", "--family", "wheel", "--k", "3"}).code, 2);
    EXPECT_EQ(run({"verify", "--in", path("missing.g6"), "--property", "ep"}).code, 2);
    EXPECT_EQ(run({"search", "--n", "12", "--property", "ep"}).code, 2);
    EXPECT_EQ(run({"witness", "--s", "2", "--ell", "2", "--edge", "0,5", "--length", "3"}).code, 2);
}

TEST_F(CliTest, MissingReportDirectoryIsAnIoError) {
    auto r = run({"bounds", "--formula", "5n3", "--n", "7", "--report", path("no/such/dir/r.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("IoError"), std::string::npos);
    EXPECT_THROW(write_text(path("nope/x.json"), "{}"), IoError);
}

TEST_F(CliTest, DeterministicReportsAreByteIdentical) {
    const auto w = path("w7.g6");
    ASSERT_EQ(run({"construct", "--family", "wheel", "--k", "7", "--out", w}).code, 0);
    for (std::vector<std::string> cmd : {std::vector<std::string>{"verify", "--in", w, "--property", "ep", "--witnesses"},
                                         {"search", "--n", "6", "--property", "kproper", "--k", "3"},
                                         {"audit", "--in", w, "--scheme", "t3"},
                                         {"coverage", "--s", "2", "--ell", "2", "--edges", "sample:3", "--jobs", "2"},
                                         {"bounds", "--theorem7", "--s", "2981"}}) {
        auto a = cmd, b = cmd;
        a.insert(a.end(), {"--deterministic", "--report", path("a.json")});
        b.insert(b.end(), {"--deterministic", "--report", path("b.json")});
        int ca = run(a).code, cb = run(b).code;
        EXPECT_EQ(ca, cb);
        auto ja = json::parse(slurp(path("a.json"))), jb = json::parse(slurp(path("b.json")));
        ja.erase("argv");
        jb.erase("argv");
        EXPECT_EQ(canonical_dump(ja), canonical_dump(jb)) << cmd[0];
        EXPECT_FALSE(ja.contains("wall_time_ms"));
    }
}

TEST_F(CliTest, AuditReportsExactRationals) {
    const auto k = path("k34.json");
    ASSERT_EQ(run({"construct", "--family", "complete", "--k", "4", "--out", path("k4.g6")}).code, 0);
    std::ofstream(k) << to_json(complete_bipartite(3, 4)).dump();
    const auto rep = path("audit.json");
    EXPECT_EQ(run({"audit", "--in", k, "--scheme", "t3", "--report", rep}).code, 0);
    auto j = json::parse(slurp(rep));
    EXPECT_EQ(j["outcome"]["min_f1"], "24/7");
    EXPECT_EQ(j["outcome"]["sum_f1"], "24");
    EXPECT_EQ(run({"audit", "--in", path("k4.g6"), "--scheme", "t4"}).code, 1);
    EXPECT_EQ(run({"audit", "--in", k, "--scheme", "t5"}).code, 2);
}

TEST_F(CliTest, PayloadsMatchLibraryCalls) {
    const auto rep = path("s.json");
    ASSERT_EQ(run({"search", "--n", "5", "--property", "ep", "--deterministic", "--report", rep}).code, 0);
    auto j = json::parse(slurp(rep));
    EXPECT_EQ(j["outcome"], to_json(min_size(5, Property::edge_pancyclic())));
    const auto brep = path("b.json");
    ASSERT_EQ(run({"bounds", "--theorem7", "--s", "100", "--ell-rule", "floor", "--report", brep}).code, 1);
    auto b = json::parse(slurp(brep));
    EXPECT_EQ(b["outcome"], to_json(theorem7_certificate(100, {EllRule::Floor})));
    EXPECT_EQ(b["outcome"]["first_failure"], "h");
}

TEST_F(CliTest, WitnessCommand) {
    auto r = run({"witness", "--s", "2", "--ell", "2", "--edge", "0,1", "--length", "796", "--validate"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("validation: ok"), std::string::npos);
    auto mid = run({"witness", "--s", "2", "--ell", "2", "--edge", "0,1", "--length", "50", "--recipe", "mid", "--p", "0"});
    EXPECT_EQ(mid.code, 2);
    auto lng = run({"witness", "--s", "2", "--ell", "2", "--edge", "0,1", "--length", "20", "--recipe", "long"});
    EXPECT_EQ(lng.code, 1);
}

TEST_F(CliTest, CoverageExitCodes) {
    EXPECT_EQ(run({"coverage", "--s", "2", "--ell", "2", "--edges", "sample:2", "--lengths", "sample:50"}).code, 0);
    EXPECT_EQ(run({"coverage", "--s", "2", "--ell", "2", "--edges", "some"}).code, 2);
}
