#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "lw/bandwidth.hpp"
#include "lw/simulate.hpp"

using namespace lw;

TEST(BandwidthResolve, PowerRuleExamples) {
    EXPECT_EQ(resolve(BandwidthRule::power_floor(0.65), 500), 56u);
    EXPECT_EQ(resolve(BandwidthRule::power_floor(0.65), 512), 57u);
    EXPECT_EQ(resolve(BandwidthRule::power_round(0.65), 8432), 356u);
    EXPECT_EQ(resolve(BandwidthRule::power_round(0.80), 8432), 1383u);
}

TEST(BandwidthResolve, ClampsWithNote) {
    std::vector<std::string> notes;
    const std::size_t m = resolve(BandwidthRule::fixed(400), 100, &notes);
    EXPECT_EQ(m, 50u);
    ASSERT_FALSE(notes.empty());
    EXPECT_NE(notes.front().find("clamped"), std::string::npos);
}

TEST(BandwidthResolve, MonotoneInN) {
    for (double alpha : {0.5, 0.65, 0.8}) {
        std::size_t prev = 0;
        for (std::size_t n = 16; n <= 4096; n = n * 3 / 2) {
            const std::size_t m = resolve(BandwidthRule::power_floor(alpha), n);
            EXPECT_GE(m, prev);
            prev = m;
        }
    }
}

TEST(BandwidthResolve, BootstrapRuleNeedsData) {
    EXPECT_THROW(resolve(BandwidthRule::bootstrap(), 500), std::invalid_argument);
}

TEST(Scan, SeColumnMatchesFormulaAndSingleRow) {
    SimSpec sim;
    sim.n = 300;
    sim.d = 0.2;
    sim.seed = 11;
    const TimeSeries x = arfima(sim);
    const auto rows = scan(x, make_spec(Method::lw, 2), 10, 40, 10);
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& row : rows) {
        ASSERT_TRUE(row.result.has_value());
        EXPECT_DOUBLE_EQ(row.result->se, 1.0 / std::sqrt(4.0 * double(row.m)));
    }
    const auto one = scan(x, make_spec(Method::lw, 2), 10, 10, 1);
    EXPECT_EQ(one.size(), 1u);
}

TEST(Scan, NearUnitRootStaysInBand) {
    SimSpec sim;
    sim.n = 8000;
    sim.d = 1.0;
    sim.seed = 314;
    const TimeSeries x = arfima(sim);
    const auto rows = scan(x, make_spec(Method::lw, 2), 92, 1383, 100);
    for (const auto& row : rows) {
        ASSERT_TRUE(row.result.has_value()) << row.error;
        EXPECT_GE(row.result->d_hat, 0.85) << "m=" << row.m;
        EXPECT_LE(row.result->d_hat, 1.10) << "m=" << row.m;
    }
}

TEST(Scan, RejectsBadRange) {
    SimSpec sim;
    sim.n = 100;
    sim.seed = 1;
    const TimeSeries x = arfima(sim);
    EXPECT_THROW(scan(x, make_spec(Method::lw, 2), 10, 5, 1), std::invalid_argument);
    EXPECT_THROW(scan(x, make_spec(Method::lw, 2), 10, 80, 1), std::invalid_argument);
}

TEST(BootstrapSelect, DeterministicGivenSeed) {
    SimSpec sim;
    sim.n = 512;
    sim.d = 0.4;
    sim.seed = 7;
    const TimeSeries x = arfima(sim);
    const std::vector<std::size_t> grid{23, 45, 90, 128, 200, 256};
    const auto a = bootstrap_select(x, 50, 15, grid, 99);
    const auto b = bootstrap_select(x, 50, 15, grid, 99);
    ASSERT_EQ(a.mse.size(), b.mse.size());
    for (std::size_t i = 0; i < a.mse.size(); ++i) ASSERT_EQ(a.mse[i], b.mse[i]);
    EXPECT_EQ(a.m_star, b.m_star);
}

TEST(BootstrapSelect, MStarAttainsCurveMinimum) {
    SimSpec sim;
    sim.n = 1024;
    sim.d = 0.3;
    sim.rho = 0.4;
    sim.seed = 55;
    const TimeSeries x = arfima(sim);
    const auto curve = bootstrap_select(x, 60, default_bootstrap_width(x.size()),
                                        default_bootstrap_grid(x.size()), 4);
    const double best = *std::min_element(curve.mse.begin(), curve.mse.end());
    const auto it = std::find(curve.candidates.begin(), curve.candidates.end(), curve.m_star);
    ASSERT_NE(it, curve.candidates.end());
    EXPECT_DOUBLE_EQ(curve.mse[static_cast<std::size_t>(it - curve.candidates.begin())], best);
}

TEST(BootstrapSelect, UShapeUnderShortRunDynamics) {
    SimSpec sim;
    sim.n = 2048;
    sim.d = 0.4;
    sim.rho = 0.5;
    sim.seed = 42;
    const TimeSeries x = arfima(sim);
    const auto grid = default_bootstrap_grid(x.size());
    const auto curve = bootstrap_select(x, 100, default_bootstrap_width(x.size()), grid, 7);
    const auto it = std::find(curve.candidates.begin(), curve.candidates.end(), curve.m_star);
    const std::size_t star = static_cast<std::size_t>(it - curve.candidates.begin());
    EXPECT_GT(star, 0u);
    EXPECT_LT(star, curve.candidates.size() - 1);
    EXPECT_GT(curve.mse.front(), curve.mse[star]);
    EXPECT_GT(curve.mse.back(), curve.mse[star]);
}

TEST(BootstrapSelect, WeakDynamicsPushBandwidthLarge) {
    SimSpec sim;
    sim.n = 2048;
    sim.d = 0.4;
    sim.seed = 42;
    const TimeSeries x = arfima(sim);
    const auto curve = bootstrap_select(x, 100, default_bootstrap_width(x.size()),
                                        default_bootstrap_grid(x.size()), 7);
    const auto n07 = static_cast<std::size_t>(std::floor(std::pow(2048.0, 0.7)));
    EXPECT_GE(curve.m_star, n07);
}

TEST(BootstrapSelect, ValidatesInputs) {
    SimSpec sim;
    sim.n = 256;
    sim.seed = 2;
    const TimeSeries x = arfima(sim);
    EXPECT_THROW(bootstrap_select(x, 50, 15, {}, 1), std::invalid_argument);
    EXPECT_THROW(bootstrap_select(x, 50, 15, {200}, 1), std::invalid_argument);
    EXPECT_THROW(bootstrap_select(x, 50, 200, {30}, 1), std::invalid_argument);
}
