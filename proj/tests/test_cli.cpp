#include <gtest/gtest.h>

#include <json.hpp>

#include <sstream>

#include "lw/cli.hpp"

using lw::cli::run_cli;

namespace {

struct CliRun {
    int status = 0;
    std::string out;
    std::string err;
};

CliRun invoke(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    CliRun r;
    r.status = run_cli(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string simulated_csv(const std::string& d, const std::string& rho, const std::string& seed,
                          const std::string& n = "500") {
    const auto sim = invoke({"simulate", "--n", n, "--d", d, "--rho", rho, "--seed", seed});
    EXPECT_EQ(sim.status, 0) << sim.err;
    return sim.out;
}

}  // namespace

TEST(Cli, SimulateIsDeterministicSingleColumnCsv) {
    const auto a = invoke({"simulate", "--n", "50", "--d", "0.4", "--seed", "9"});
    const auto b = invoke({"simulate", "--n", "50", "--d", "0.4", "--seed", "9"});
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.substr(0, 6), "value\n");
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 51);
}

TEST(Cli, EstimatePipelineFromStdin) {
    const std::string csv = simulated_csv("0.4", "0.5", "7");
    const auto est = invoke({"estimate", "--method", "elw", "--alpha", "0.65"}, csv);
    ASSERT_EQ(est.status, 0) << est.err;
    EXPECT_NE(est.out.find("elw"), std::string::npos);
}

TEST(Cli, ElwUnderShortRunDynamicsNearPointFive) {
    // simulate --d 0.4 --rho 0.5 | estimate --method elw: the AR(1) bias
    // pushes the estimate toward 0.5; it should sit within 3 SE of it.
    const std::string csv = simulated_csv("0.4", "0.5", "7");
    const auto est =
        invoke({"estimate", "--method", "elw", "--alpha", "0.65", "--format", "json"}, csv);
    ASSERT_EQ(est.status, 0) << est.err;
    const auto j = nlohmann::json::parse(est.out);
    const double d_hat = j["results"][0]["d_hat"].get<double>();
    const double se = j["results"][0]["se"].get<double>();
    EXPECT_LE(std::fabs(d_hat - 0.5), 3.0 * se);
}

TEST(Cli, JsonNumbersRoundTrip) {
    const std::string csv = simulated_csv("0.3", "0.0", "21");
    const auto est = invoke({"estimate", "--method", "all", "--m", "40", "--format", "json"}, csv);
    ASSERT_EQ(est.status, 0) << est.err;
    const auto j = nlohmann::json::parse(est.out);
    // reparse of the dump reproduces every numeric field bit for bit
    const auto j2 = nlohmann::json::parse(j.dump());
    for (std::size_t i = 0; i < j["results"].size(); ++i) {
        EXPECT_EQ(j["results"][i]["d_hat"].get<double>(),
                  j2["results"][i]["d_hat"].get<double>());
        EXPECT_EQ(j["results"][i]["se"].get<double>(), j2["results"][i]["se"].get<double>());
    }
}

TEST(Cli, MethodAllOrderingFixed) {
    const std::string csv = simulated_csv("0.3", "0.0", "3");
    const auto est = invoke({"estimate", "--method", "all", "--m", "40", "--format", "json"}, csv);
    ASSERT_EQ(est.status, 0) << est.err;
    const auto j = nlohmann::json::parse(est.out);
    ASSERT_EQ(j["results"].size(), 5u);
    EXPECT_EQ(j["results"][0]["method"], "lw");
    EXPECT_EQ(j["results"][1]["method"], "velasco(kolmogorov)");
    EXPECT_EQ(j["results"][2]["method"], "hc");
    EXPECT_EQ(j["results"][3]["method"], "elw");
    EXPECT_EQ(j["results"][4]["method"], "2elw");
}

TEST(Cli, DisagreementNoteOnContaminatedSeries) {
    // nonstationary series with a large mean: LW saturates near one while
    // the exact estimators track d, so the spread exceeds twice the SE
    const auto sim = invoke(
        {"simulate", "--n", "500", "--d", "1.3", "--mu", "10", "--seed", "12"});
    ASSERT_EQ(sim.status, 0);
    const auto est =
        invoke({"estimate", "--method", "all", "--m", "56", "--format", "json"}, sim.out);
    ASSERT_EQ(est.status, 0) << est.err;
    const auto j = nlohmann::json::parse(est.out);
    EXPECT_TRUE(j.contains("disagreement_note"));
}

TEST(Cli, ElwWideBoundsIsUsageError) {
    const auto r = invoke({"estimate", "--method", "elw", "--bounds", "-3,3"}, "value\n1\n2\n3\n");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("4.5"), std::string::npos);
}

TEST(Cli, UnknownFlagRejected) {
    const auto r = invoke({"estimate", "--frobnicate"}, "");
    EXPECT_EQ(r.status, 2);
}

TEST(Cli, MissingRequiredOptionRejected) {
    const auto r = invoke({"scan-m"}, "");
    EXPECT_EQ(r.status, 2);
}

TEST(Cli, RuntimeErrorsExitOne) {
    const auto r = invoke({"estimate", "--input", "/nonexistent.csv"});
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, ProfileEmitsCsvWithMinima) {
    const std::string csv = simulated_csv("0.3", "0.0", "5");
    const auto r = invoke(
        {"profile", "--method", "lw", "--m", "56", "--grid", "-0.5,1.5,0.05"}, csv);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, 25), "d,objective,is_local_min\n");
    EXPECT_NE(r.out.find(",1\n"), std::string::npos);  // at least one minimum flagged
}

TEST(Cli, ScanEmitsCsv) {
    const std::string csv = simulated_csv("0.3", "0.0", "5", "400");
    const auto r = invoke({"scan-m", "--method", "lw", "--m-range", "20,60,20"}, csv);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, 16), "m,d_hat,se,error");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, BootEmitsCurveAndChoice) {
    const std::string csv = simulated_csv("0.4", "0.0", "5", "512");
    const auto r = invoke({"boot-m", "--B", "50", "--seed", "3"}, csv);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, 6), "m,mse\n");
    EXPECT_NE(r.out.find("# m_star = "), std::string::npos);
    const auto again = invoke({"boot-m", "--B", "50", "--seed", "3"}, csv);
    EXPECT_EQ(r.out, again.out);
}

TEST(Cli, QuReportsThreeDecimals) {
    const std::string csv = simulated_csv("0.4", "0.0", "8");
    const auto r = invoke({"qu", "--m", "56"}, csv);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("W = "), std::string::npos);
    EXPECT_NE(r.out.find("1.022"), std::string::npos);
}

TEST(Cli, BreaksFindsPlantedShift) {
    std::string csv = "value\n";
    const std::string base = simulated_csv("0.0", "0.0", "44", "400");
    std::istringstream in(base);
    std::string line;
    std::getline(in, line);
    int t = 0;
    while (std::getline(in, line)) {
        csv += std::to_string(std::stod(line) + (t >= 200 ? 4.0 : 0.0)) + "\n";
        ++t;
    }
    const auto r = invoke({"breaks", "--max-breaks", "2", "--format", "json"}, csv);
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["break_indices"].size(), 1u);
    EXPECT_NEAR(j["break_indices"][0].get<double>(), 200.0, 5.0);
}

TEST(Cli, McRunsFromJsonConfig) {
    const std::string config = R"({
        "n": 128, "reps": 20, "seed": 5,
        "d_values": [0.0],
        "estimators": [
            {"method": "lw", "alpha": 0.65},
            {"method": "elw", "alpha": 0.65, "bounds": [-1, 3]}
        ]
    })";
    const auto r = invoke({"mc", "--config", "-", "--format", "csv"}, config);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out.rfind("d,rho,mu,beta,estimator,bias,sd,mse,reps_used", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}
