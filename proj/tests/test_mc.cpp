#include <gtest/gtest.h>

#include <cmath>

#include "lw/mc.hpp"

using namespace lw;

namespace {

MCConfig small_config() {
    MCConfig config;
    config.n = 128;
    config.reps = 40;
    config.seed = 11;
    config.d_values = {0.0, 0.4};
    config.estimators.push_back({"lw", make_spec(Method::lw, 2), BandwidthRule::power_floor(0.65)});
    config.estimators.push_back({"elw", make_spec(Method::elw, 2), BandwidthRule::power_floor(0.65)});
    return config;
}

}  // namespace

TEST(MC, SingleRepDegenerateAggregation) {
    MCConfig config = small_config();
    config.reps = 1;
    const auto summary = run(config);
    for (const auto& row : summary.rows) {
        EXPECT_DOUBLE_EQ(row.sd, 0.0);
        EXPECT_NEAR(row.mse, row.bias * row.bias, 1e-15);
    }
}

TEST(MC, MseDecomposition) {
    const auto summary = run(small_config());
    for (const auto& row : summary.rows)
        EXPECT_NEAR(row.mse, row.bias * row.bias + row.sd * row.sd,
                    1e-10 * std::max(1.0, row.mse));
}

TEST(MC, DeterministicAcrossWorkerCounts) {
    MCConfig config = small_config();
    config.workers = 1;
    const auto a = run(config);
    config.workers = 4;
    const auto b = run(config);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        ASSERT_EQ(a.rows[i].bias, b.rows[i].bias);
        ASSERT_EQ(a.rows[i].sd, b.rows[i].sd);
        ASSERT_EQ(a.rows[i].mse, b.rows[i].mse);
        ASSERT_EQ(a.rows[i].failures, b.rows[i].failures);
    }
}

TEST(MC, CommonRandomNumbersAcrossEstimatorSets) {
    MCConfig lone = small_config();
    lone.estimators.resize(1);  // lw only
    const auto a = run(lone);
    const auto b = run(small_config());  // lw + elw
    ASSERT_EQ(a.rows.size() * 2, b.rows.size());
    for (std::size_t c = 0; c < a.rows.size(); ++c) {
        ASSERT_EQ(a.rows[c].bias, b.rows[2 * c].bias);  // same paths, same estimates
        ASSERT_EQ(a.rows[c].sd, b.rows[2 * c].sd);
    }
}

TEST(MC, RowOrderingIsCellMajor) {
    const auto summary = run(small_config());
    ASSERT_EQ(summary.rows.size(), 4u);
    EXPECT_EQ(summary.rows[0].estimator, "lw");
    EXPECT_EQ(summary.rows[1].estimator, "elw");
    EXPECT_DOUBLE_EQ(summary.rows[0].cell.d, 0.0);
    EXPECT_DOUBLE_EQ(summary.rows[2].cell.d, 0.4);
}

TEST(MC, TableMarksLargeMseStrictly) {
    MCSummary summary;
    summary.reps = 100;
    MCRow row;
    row.estimator = "lw";
    row.mse = 0.051;
    summary.rows.push_back(row);
    row.mse = 0.05;
    summary.rows.push_back(row);
    const std::string table = render_table(summary, 0.05);
    const auto first_line = table.find("0.0510");
    const auto second_line = table.find("0.0500");
    ASSERT_NE(first_line, std::string::npos);
    ASSERT_NE(second_line, std::string::npos);
    EXPECT_EQ(table[first_line + 6], '*');
    EXPECT_EQ(table[second_line + 6], ' ');
}

TEST(MC, EmptyEstimatorsRejected) {
    MCConfig config = small_config();
    config.estimators.clear();
    EXPECT_THROW(run(config), std::invalid_argument);
    EXPECT_THROW(render_table(MCSummary{}, 0.05), std::invalid_argument);
}

TEST(MC, BootstrapRuleRejected) {
    MCConfig config = small_config();
    config.estimators[0].bandwidth = BandwidthRule::bootstrap();
    EXPECT_THROW(run(config), std::invalid_argument);
}

TEST(MC, TableFootersFlagFailureRates) {
    MCSummary summary;
    summary.reps = 100;
    MCRow row;
    row.estimator = "elw";
    row.reps_used = 98;
    row.failures = 2;  // above the 1% reporting line
    summary.rows.push_back(row);
    const std::string table = render_table(summary, 0.05);
    EXPECT_NE(table.find("warning"), std::string::npos);
    summary.rows[0].failures = 1;
    EXPECT_EQ(render_table(summary, 0.05).find("warning"), std::string::npos);
}

// Moderate AR(1) dynamics push the exact estimator's bias to about +0.10.
TEST(MC, ElwBiasUnderModerateAutocorrelation) {
    MCConfig config;
    config.n = 500;
    config.reps = 500;
    config.seed = 1618;
    config.d_values = {0.3};
    config.rho_values = {0.5};
    MCEstimator est;
    est.spec = make_spec(Method::elw, 2);
    est.bandwidth = BandwidthRule::power_floor(0.65);
    config.estimators = {est};
    const auto summary = run(config);
    EXPECT_GE(summary.rows[0].bias, 0.085);
    EXPECT_LE(summary.rows[0].bias, 0.115);
}

// Null design: all five estimators nearly unbiased, with spread close to
// the finite-sample values that go with their asymptotic standard errors
// at m = 56 (the order-3 taper runs noticeably above its asymptote at
// this sample size).
TEST(MC, NullDesignMatchesAsymptotics) {
    MCConfig config;
    config.n = 500;
    config.reps = 1000;
    config.seed = 271828;
    config.estimators = {
        {"lw", make_spec(Method::lw, 2), BandwidthRule::power_floor(0.65)},
        {"velasco", make_spec(Method::velasco, 2), BandwidthRule::power_floor(0.65)},
        {"hc", make_spec(Method::hc, 2), BandwidthRule::power_floor(0.65)},
        {"elw", make_spec(Method::elw, 2), BandwidthRule::power_floor(0.65)},
        {"2elw", make_spec(Method::two_step_elw, 2), BandwidthRule::power_floor(0.65)},
    };
    const auto summary = run(config);
    const double expected_sd[] = {0.0775, 0.163, 0.098, 0.078, 0.077};
    for (std::size_t e = 0; e < 5; ++e) {
        EXPECT_LT(std::fabs(summary.rows[e].bias), 0.03) << summary.rows[e].estimator;
        EXPECT_NEAR(summary.rows[e].sd, expected_sd[e], 0.02) << summary.rows[e].estimator;
        EXPECT_EQ(summary.rows[e].failures, 0u);
    }
}
