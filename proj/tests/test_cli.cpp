// Drives the built `magnonics` executable end to end.

#include "magnonics/io.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd =
        std::string(MAGNONICS_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::size_t data_rows(const std::string& csv) {
    std::istringstream is(csv);
    return magnonics::read_csv(is).records.size();
}

}  // namespace

TEST(Cli, PointDecoupledVacuum) {
    const CliResult r = run("point --lambda 0 --r 0 --g1 0 --g2 0 --delta-d 0 --delta-o 0 --temp-mk 0");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["stable"], true);
    for (auto& [k, v] : j["variances"].items()) EXPECT_NEAR(v.get<double>(), 0.5, 1e-12) << k;
    for (const char* pair : {"o1_o2", "d_o1", "d_o2"}) {
        EXPECT_EQ(j["pairs"][pair]["E_N"].get<double>(), 0.0);
        EXPECT_EQ(j["pairs"][pair]["S_ab"].get<double>(), 0.0);
        EXPECT_EQ(j["pairs"][pair]["S_ba"].get<double>(), 0.0);
    }
    EXPECT_EQ(j["tripartite"]["R_min"].get<double>(), 0.0);
}

TEST(Cli, PointBaselineEntangled) {
    const CliResult r = run("point --lambda 0.2 --r 2");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_GT(j["pairs"]["o1_o2"]["E_N"].get<double>(), 0.0);
    EXPECT_NEAR(j["meta"]["temperature_mk"].get<double>(), 20.0, 1e-12);
}

TEST(Cli, PointUnstableExitsTwo) {
    const CliResult r = run("point --lambda 0.6 --g1 0 --g2 0");
    EXPECT_EQ(r.code, 2);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["stable"], false);
}

TEST(Cli, InvalidFlagsExitOne) {
    const CliResult r = run("point --bogus 3", true);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("Usage"), std::string::npos);
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("point --lambda -1").code, 1);
}

TEST(Cli, SweepGainAxis) {
    const CliResult r = run("sweep --axis lambda:0:0.5:51 --r 2");
    ASSERT_EQ(r.code, 0);
    std::istringstream is(r.out);
    const auto doc = magnonics::read_csv(is);
    ASSERT_EQ(doc.records.size(), 51u);
    for (std::size_t i = 1; i < doc.records.size(); ++i) EXPECT_GE(*doc.records[i].e_n, *doc.records[i - 1].e_n);
    bool has_axis = false;
    for (const auto& m : doc.meta) has_axis |= m.key == "axis1" && m.value == "lambda:0:0.5:51";
    EXPECT_TRUE(has_axis);
}

TEST(Cli, SweepDetuningGridCardinality) {
    const CliResult r = run("sweep --axis delta_d:-5:5:101 --axis delta_o:-5:5:101 --threads 2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(data_rows(r.out), 10201u);
}

TEST(Cli, SweepGipSentinel) {
    // vacuum-like magnons: GIP guard trips, column stays empty
    const CliResult r = run("sweep --axis delta_d:-1:1:3 --g1 0 --g2 0");
    ASSERT_EQ(r.code, 0);
    std::istringstream is(r.out);
    for (const auto& rec : magnonics::read_csv(is).records) {
        EXPECT_TRUE(rec.stable);
        EXPECT_FALSE(rec.gip.has_value());
    }
}

TEST(Cli, SweepMalformedAxis) {
    EXPECT_EQ(run("sweep --axis lambda:0:0.5").code, 1);
    EXPECT_EQ(run("sweep --axis foo:0:1:3").code, 1);
    EXPECT_EQ(run("sweep").code, 1);
}

TEST(Cli, SweepJsonAndOutFile) {
    const std::string path = std::string(MAGNONICS_TEST_TMPDIR) + "/cli_sweep.json";
    const CliResult r = run("sweep --axis r:0:1:3 --format json --out " + path);
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    const auto j = nlohmann::json::parse(f);
    EXPECT_EQ(j["records"].size(), 3u);
    EXPECT_TRUE(j["meta"].contains("lambda"));
}

TEST(Cli, SweepOutputIndependentOfThreads) {
    const std::string args = "sweep --axis delta_d:-2:2:9 --axis r:0:2:5 --lambda 0.2";
    EXPECT_EQ(run(args + " --threads 1").out, run(args + " --threads 3").out);
}

TEST(Cli, FigureFig5aMinimumAtCentre) {
    const CliResult r = run("figure fig5a --points 21");
    ASSERT_EQ(r.code, 0);
    std::istringstream is(r.out);
    const auto doc = magnonics::read_csv(is);
    ASSERT_EQ(doc.records.size(), 441u);
    const auto& centre = doc.records[220];
    EXPECT_EQ(centre.axis1, 0.0);
    EXPECT_EQ(*centre.axis2, 0.0);
    EXPECT_LT(*centre.mancini, 0.25);
    for (const auto& rec : doc.records) EXPECT_GE(*rec.mancini, *centre.mancini);
    bool figure_named = false, has_default = false;
    for (const auto& m : doc.meta) {
        figure_named |= m.key == "figure" && m.value == "fig5a";
        has_default |= m.value.find("(default)") != std::string::npos;
    }
    EXPECT_TRUE(figure_named);
    EXPECT_TRUE(has_default);
}

TEST(Cli, FigureFig6bShowsSqueezing) {
    const CliResult r = run("figure fig6b --points 11");
    ASSERT_EQ(r.code, 0);
    std::istringstream is(r.out);
    double best = 1e9;
    for (const auto& rec : magnonics::read_csv(is).records) best = std::min(best, *rec.var[2]);
    EXPECT_LT(best, 0.5);
}

TEST(Cli, FigureUnknownListsNames) {
    const CliResult r = run("figure fig9z", true);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("fig7b"), std::string::npos);
}
