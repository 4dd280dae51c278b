#ifndef LW_MC_HPP
#define LW_MC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lw/bandwidth.hpp"
#include "lw/estimators.hpp"

namespace lw {

struct MCEstimator {
    std::string label;
    EstimatorSpec spec;      // spec.m is ignored; the rule below sets it
    BandwidthRule bandwidth = BandwidthRule::power_floor(0.65);
};

/// Experiment grid: every (d, rho, mu, beta) combination is one cell; all
/// estimators see the same simulated path in each replication (common
/// random numbers), and replication r of cell c draws its seed from
/// (seed, c, r) so results do not depend on scheduling.
struct MCConfig {
    std::size_t n = 500;
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    double sigma = 1.0;
    std::vector<double> d_values{0.0};
    std::vector<double> rho_values{0.0};
    std::vector<double> mu_values{0.0};
    std::vector<double> beta_values{0.0};
    std::vector<MCEstimator> estimators;
    unsigned workers = 0;  // 0 = hardware concurrency
};

void validate(const MCConfig& config);

struct MCCell {
    double d = 0.0, rho = 0.0, mu = 0.0, beta = 0.0;
};

struct MCRow {
    MCCell cell;
    std::string estimator;
    double bias = 0.0;
    double sd = 0.0;   // population convention, so mse = bias^2 + sd^2 exactly
    double mse = 0.0;
    std::size_t reps_used = 0;
    std::size_t failures = 0;
};

struct MCSummary {
    std::vector<MCRow> rows;  // cell-major, estimator order as configured
    std::size_t reps = 0;
};

MCSummary run(const MCConfig& config);

/// Aligned text table with bias/SD/MSE to 4 decimals; MSE strictly above
/// `shade_threshold` is marked with '*', and estimators failing in more
/// than 1% of replications are flagged in a footer.
std::string render_table(const MCSummary& summary, double shade_threshold = 0.05);

/// Machine-readable form: one CSV row per cell x estimator.
std::string render_csv(const MCSummary& summary);

}  // namespace lw

#endif  // LW_MC_HPP
