#ifndef LW_BANDWIDTH_HPP
#define LW_BANDWIDTH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lw/estimators.hpp"
#include "lw/series.hpp"

namespace lw {

/// How to pick the number of frequencies m for a series of length n.
struct BandwidthRule {
    enum class Kind { power_floor, power_round, fixed, bootstrap };
    Kind kind = Kind::power_floor;
    double alpha = 0.65;       // power rules
    std::size_t fixed_m = 0;   // fixed
    // bootstrap parameters; zero/empty fields are filled with defaults at
    // resolution time (k_n = max(11, round(n/33)) forced odd; grid = 20
    // log-spaced candidates from floor(n^0.5) to floor(n/2)).
    std::size_t B = 200;
    std::size_t k_n = 0;
    std::vector<std::size_t> grid;

    static BandwidthRule power_floor(double alpha) {
        return {Kind::power_floor, alpha, 0, 200, 0, {}};
    }
    static BandwidthRule power_round(double alpha) {
        return {Kind::power_round, alpha, 0, 200, 0, {}};
    }
    static BandwidthRule fixed(std::size_t m) { return {Kind::fixed, 0.65, m, 200, 0, {}}; }
    static BandwidthRule bootstrap(std::size_t B = 200, std::size_t k_n = 0,
                                   std::vector<std::size_t> grid = {}) {
        return {Kind::bootstrap, 0.65, 0, B, k_n, std::move(grid)};
    }
};

void validate(const BandwidthRule& rule);

/// Resolves a non-bootstrap rule to a bandwidth, clamped to [2, n/2] with a
/// warning note when clamping fires.
std::size_t resolve(const BandwidthRule& rule, std::size_t n,
                    std::vector<std::string>* notes = nullptr);

/// Full resolution including the bootstrap rule, which needs the data.
std::size_t resolve(const BandwidthRule& rule, const TimeSeries& x, std::uint64_t seed,
                    std::vector<std::string>* notes = nullptr);

struct ScanRow {
    std::size_t m = 0;
    std::optional<EstimateResult> result;
    std::string error;  // set when this m failed
};

/// One estimate per bandwidth in [lo, hi] stepping by `step`. Individual
/// failures become gaps, not aborts.
std::vector<ScanRow> scan(const TimeSeries& x, const EstimatorSpec& spec, std::size_t lo,
                          std::size_t hi, std::size_t step);

struct BootstrapMseCurve {
    std::vector<std::size_t> candidates;
    std::vector<double> mse;
    std::size_t m_star = 0;
    double pilot_d = 0.0;
    std::size_t pilot_m = 0;
};

/// Bootstrap-MSE bandwidth selection for the LW estimator: a pilot LW fit
/// at m0 = floor(n^0.7) standardizes the periodogram; ordinates are then
/// locally resampled (window width k_n) to build B bootstrap periodograms,
/// the LW estimate is recomputed on each at every candidate m, and m_star
/// minimizes the average squared deviation from the pilot estimate. Ties
/// break toward smaller m. Fully determined by (seed, b, j).
BootstrapMseCurve bootstrap_select(const TimeSeries& x, std::size_t B, std::size_t k_n,
                                   const std::vector<std::size_t>& grid, std::uint64_t seed);

/// Default candidate grid: 20 log-spaced bandwidths from floor(n^0.5) to
/// floor(n/2), deduplicated.
std::vector<std::size_t> default_bootstrap_grid(std::size_t n);

/// Default resampling width: max(11, round(n/33)), forced odd.
std::size_t default_bootstrap_width(std::size_t n);

}  // namespace lw

#endif  // LW_BANDWIDTH_HPP
