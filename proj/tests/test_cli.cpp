#include "polygeom/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace polygeom;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("polygeom_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        const auto p = (dir_ / name).string();
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CountZerosJson) {
    const auto sets = write("sets.csv", "A: 1,2,3\nB: 1,2,3\nC: 1,2,3\nD: -9,-8,-7,-6,-5,-4,-3\n");
    for (const char* method : {"naive", "fiber"}) {
        const auto r = run({"count-zeros", "--poly", "x+y+s+t", "--sets", sets, "--method", method});
        ASSERT_EQ(r.code, 0) << r.err;
        const auto j = json::parse(r.out);
        EXPECT_EQ(j["count"], 27);
        EXPECT_EQ(j["method"], method);
        EXPECT_EQ(j["poly"], "x + y + s + t");
    }
}

TEST_F(CliTest, CountZerosCsvAndOutputFile) {
    const auto sets = write("sets.csv", "A: 1,2,3,4\nB: 1,2,3,4\nC: 1,2,3,4\nD: 1,2,3,4\n");
    const auto out = (dir_ / "report.csv").string();
    const auto r = run({"count-zeros", "--poly", "t - (x + y*s)", "--sets", sets, "--out", "csv", "--output", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, "count,method,degenerate_fibers,elapsed_ms");
    EXPECT_EQ(row.substr(0, 8), "9,fiber,");
}

TEST_F(CliTest, DetectSpecial) {
    auto r = run({"detect-special", "--poly", "t - (x + y*s)"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["classification"], "non-special");
    EXPECT_GT(j["ratio_spread"][0].get<double>(), 1e-2);
    EXPECT_EQ(j["seed"], kDefaultSeed);
    r = run({"detect-special", "--poly", "x*y - s*t", "--popular", "1:6,2:3,6:1"});
    ASSERT_EQ(r.code, 0) << r.err;
    j = json::parse(r.out);
    EXPECT_EQ(j["classification"], "special");
    EXPECT_EQ(j["popular"]["components"][0]["factor"], "x*y - 6");
    EXPECT_EQ(j["popular"]["components"][0]["multiplicity"], 3);
}

TEST_F(CliTest, ConstructAndCountRoundTrip) {
    auto r = run({"construct", "--kind", "elliptic", "--n", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto pts = write("ell.csv", r.out);
    r = run({"count-coplanar", "--points", pts, "--mode", "float", "--method", "naive"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["count"], 28);

    r = run({"construct", "--kind", "moment", "--n", "12", "--spacing", "1/2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "1/2,1/4,1/8");
    const auto moment = write("moment.csv", r.out);
    for (const char* m : {"naive", "fast"}) {
        r = run({"count-coplanar", "--points", moment, "--method", m});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(json::parse(r.out)["count"], 0);
    }

    r = run({"construct", "--kind", "ap-additive", "--n", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto sets = write("ap.csv", r.out);
    r = run({"count-zeros", "--poly", "x+y+s+t", "--sets", sets});
    EXPECT_EQ(json::parse(r.out)["count"], 27);

    r = run({"construct", "--kind", "ap-multiplicative", "--n", "2", "--out", "json"});
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["expected_count"], 8);
    EXPECT_EQ(j["sets"]["D"][0], "1/64");
}

TEST_F(CliTest, PlanarCounters) {
    const auto circle = write("c.csv", "5,0\n3,4\n0,5\n-4,-3\n4,-3\n");
    auto r = run({"count-circles", "--points", circle});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["circles"], 1);
    EXPECT_EQ(j["count"], 5);
    const auto line = write("l.csv", "# a line\n0,0\n0.5,1\n1,2\n1.5,3\n");
    r = run({"count-collinear", "--points", line, "--out", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("collinear-triples,hash,4,24,"), std::string::npos);
    r = run({"count-circles", "--points", line});
    EXPECT_EQ(json::parse(r.out)["circles"], 0);
}

TEST_F(CliTest, FitExponent) {
    auto r = run({"fit-exponent", "--experiment", "ap-additive", "--ns", "4,8,16,32", "--out", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\n32,32768,"), std::string::npos);
    EXPECT_NE(r.out.find("slope,3,"), std::string::npos);
    r = run({"fit-exponent", "--experiment", "moment-coplanar", "--ns", "5,6,7"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(json::parse(r.out)["fit"].is_null());
}

TEST_F(CliTest, SeedIsDeterministic) {
    const std::vector<std::string> args{"--seed", "9", "detect-special", "--poly", "x^2*y + s - t^2", "--trials", "10"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
    const auto sets = write("sets.csv", "A: 1,2\nB: 1,2\nC: 1,2\nD: -6,-5,-4,-3\n");
    const auto cfg = write("run.cfg", "# defaults\npoly = x+y+s+t\nsets = " + sets + "\nmethod = naive\nout = csv\n");
    auto r = run({"count-zeros", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("8,naive,"), std::string::npos);
    r = run({"count-zeros", "--config", cfg, "--method", "fiber"});
    EXPECT_NE(r.out.find("8,fiber,"), std::string::npos);
    const auto bad = write("bad.cfg", "nonsense = 1\n");
    EXPECT_EQ(run({"count-zeros", "--config", bad}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"count-zeros", "--poly", "x"}).code, 2);  // --sets missing
    const auto sets = write("sets.csv", "A: 1\nB: 1\nC: 1\nD: 1\n");
    const auto r = run({"count-zeros", "--poly", "x", "--sets", sets, "--bogus"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.rfind("error:usage:", 0), 0u);
    EXPECT_EQ(run({"construct", "--kind", "torus", "--n", "3"}).code, 2);
    EXPECT_EQ(run({"count-coplanar", "--points", (dir_ / "missing.csv").string()}).code, 2);
}

TEST_F(CliTest, DomainErrors) {
    const auto sets = write("sets.csv", "A: 1\nB: 1\nC: 1\nD: 1\n");
    auto r = run({"count-zeros", "--poly", "x + q", "--sets", sets});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err.rfind("error:undeclared-variable:", 0), 0u);
    r = run({"construct", "--kind", "elliptic", "--n", "8", "--a", "-1", "--b", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err.rfind("error:degenerate:", 0), 0u);
    const auto dup = write("dup.csv", "0,0,0\n1,0,0\n0,0,0\n");
    r = run({"count-coplanar", "--points", dup});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err.rfind("error:duplicate-points:", 0), 0u);
    const auto dupsets = write("dupsets.csv", "A: 1,1\n");
    EXPECT_EQ(run({"count-zeros", "--poly", "x", "--sets", dupsets}).code, 1);
}

TEST_F(CliTest, HelpListsFlags) {
    auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* sub : {"count-zeros", "detect-special", "construct", "count-coplanar", "count-collinear",
                            "count-circles", "fit-exponent", "--seed", "--threads", "--config"})
        EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
    r = run({"count-coplanar", "--help"});
    for (const char* flag : {"--points", "--method", "--mode", "--tol"}) EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
}

TEST_F(CliTest, BinaryExitCodes) {
    const std::string exe = POLYGEOM_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    const auto sets = write("sets.csv", "A: 1,2\nB: 1,2\nC: 1,2\nD: -6,-5,-4,-3\n");
    EXPECT_EQ(status("count-zeros --poly 'x+y+s+t' --sets " + sets), 0);
    EXPECT_EQ(status("count-zeros --nope"), 2);
    EXPECT_EQ(status("count-zeros --poly 'x+' --sets " + sets), 1);
}
