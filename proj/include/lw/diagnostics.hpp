#ifndef LW_DIAGNOSTICS_HPP
#define LW_DIAGNOSTICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lw/bandwidth.hpp"
#include "lw/estimators.hpp"
#include "lw/series.hpp"

namespace lw {

/// Frequency-band stability test of true fractional integration against
/// break/trend contamination.
struct QuResult {
    double W = 0.0;
    double epsilon = 0.02;
    double critical_10pct = 1.022;
    bool reject_10pct = false;
    double d_hat = 0.0;  // LW estimate the statistic is built around
    std::size_t m = 0;
};

/// W = max over r in [epsilon, 1] of
///   |sum_{j<=rm} nu_j (I_j lambda_j^{2 d_hat} / G_hat - 1)| / sqrt(sum nu_j^2),
/// nu_j = log j - mean log j. The only shipped critical value is the 10%
/// one for epsilon = 0.02; pass `critical` to use another.
QuResult qu_test(const TimeSeries& x, std::size_t m, double epsilon = 0.02,
                 std::optional<double> critical = std::nullopt);

/// Mean-shift segmentation chosen by BIC.
struct BreakModel {
    std::vector<std::size_t> break_indices;  // 1-based last index of each segment but the final
    std::vector<double> segment_means;
    double ssr = 0.0;
    double criterion = 0.0;  // BIC of the winning model
    std::size_t n = 0;
    std::size_t min_segment = 0;
};

/// Exact dynamic-programming minimization of the within-segment sum of
/// squares over 0..max_breaks mean shifts with minimum segment length
/// ceil(min_len_frac * n); the break count minimizes
/// BIC = n log(ssr/n) + (#breaks + #segments) log n.
BreakModel detect_mean_breaks(const TimeSeries& x, std::size_t max_breaks,
                              double min_len_frac = 0.15);

struct SegmentEstimate {
    std::string label;      // "full" or "segment k"
    std::size_t start = 0;  // 1-based, inclusive
    std::size_t end = 0;    // 1-based, inclusive
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<EstimateResult> result;
    std::string error;
    double mean = 0.0;
};

/// Re-estimates d on the full sample and within each detected regime, with
/// a per-segment bandwidth from `rule`. Per-segment failures are recorded
/// in their row rather than thrown.
std::vector<SegmentEstimate> subsample_estimates(const TimeSeries& x, const BreakModel& breaks,
                                                 const EstimatorSpec& spec,
                                                 const BandwidthRule& rule);

}  // namespace lw

#endif  // LW_DIAGNOSTICS_HPP
