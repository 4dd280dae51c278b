#include "lw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lw/spectrum.hpp"

namespace lw {

QuResult qu_test(const TimeSeries& x, std::size_t m, double epsilon,
                 std::optional<double> critical) {
    validate(x);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("qu_test: epsilon must lie in (0, 1)");
    if (x.size() < 2 * m) throw std::invalid_argument("qu_test: need n >= 2m");

    const Periodogram I = periodogram(x, TaperKind::none, m);
    const auto [lo, hi] = default_bounds(Method::lw);
    const MinimizeResult fit = minimize_scalar(
        [&I](double d) { return lw_objective(I, d); }, lo, hi, MinimizeMode::convex);
    const double d_hat = fit.x;

    double G = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        G += I.ords[j] * std::pow(I.freqs[j], 2.0 * d_hat);
    G /= static_cast<double>(m);
    if (!(G > 0.0)) throw std::runtime_error("qu_test: degenerate periodogram");

    std::vector<double> nu(m);
    double mean_logj = 0.0;
    for (std::size_t j = 1; j <= m; ++j) mean_logj += std::log(static_cast<double>(j));
    mean_logj /= static_cast<double>(m);
    double nu2 = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
        nu[j - 1] = std::log(static_cast<double>(j)) - mean_logj;
        nu2 += nu[j - 1] * nu[j - 1];
    }

    const std::size_t k0 = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(m))));
    double running = 0.0, peak = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
        running += nu[j - 1] * (I.ords[j - 1] * std::pow(I.freqs[j - 1], 2.0 * d_hat) / G - 1.0);
        if (j >= k0) peak = std::max(peak, std::fabs(running));
    }

    QuResult out;
    out.W = peak / std::sqrt(nu2);
    out.epsilon = epsilon;
    out.critical_10pct = critical.value_or(1.022);
    out.reject_10pct = out.W > out.critical_10pct;
    out.d_hat = d_hat;
    out.m = m;
    return out;
}

namespace {

// Within-segment sum of squared deviations from the segment mean over the
// 0-based inclusive range [i, j], from prefix sums.
class SegmentCost {
  public:
    explicit SegmentCost(const std::vector<double>& x)
        : s1_(x.size() + 1, 0.0L), s2_(x.size() + 1, 0.0L) {
        for (std::size_t t = 0; t < x.size(); ++t) {
            s1_[t + 1] = s1_[t] + static_cast<long double>(x[t]);
            s2_[t + 1] = s2_[t] + static_cast<long double>(x[t]) * static_cast<long double>(x[t]);
        }
    }
    double operator()(std::size_t i, std::size_t j) const {
        const long double s = s1_[j + 1] - s1_[i];
        const long double q = s2_[j + 1] - s2_[i];
        const long double len = static_cast<long double>(j - i + 1);
        const long double ssr = q - s * s / len;
        return static_cast<double>(std::max<long double>(ssr, 0.0L));
    }
    double mean(std::size_t i, std::size_t j) const {
        return static_cast<double>((s1_[j + 1] - s1_[i]) /
                                   static_cast<long double>(j - i + 1));
    }

  private:
    std::vector<long double> s1_, s2_;
};

}  // namespace

BreakModel detect_mean_breaks(const TimeSeries& x, std::size_t max_breaks, double min_len_frac) {
    validate(x);
    if (max_breaks > 5) throw std::invalid_argument("detect_mean_breaks: max_breaks must be <= 5");
    if (!(min_len_frac > 0.0 && min_len_frac < 1.0))
        throw std::invalid_argument("detect_mean_breaks: min_len_frac must lie in (0, 1)");
    const std::size_t n = x.size();
    const std::size_t h = static_cast<std::size_t>(
        std::ceil(min_len_frac * static_cast<double>(n)));
    if (n < 2 * h)
        throw std::invalid_argument("detect_mean_breaks: series too short for the minimum "
                                    "segment length");

    const SegmentCost cost(x.values);
    const double inf = std::numeric_limits<double>::infinity();

    // dp[k][t]: best SSR for x[0..t] split into k+1 segments, each >= h long.
    const std::size_t K = max_breaks;
    std::vector<std::vector<double>> dp(K + 1, std::vector<double>(n, inf));
    std::vector<std::vector<std::size_t>> arg(K + 1, std::vector<std::size_t>(n, 0));
    for (std::size_t t = h - 1; t < n; ++t) dp[0][t] = cost(0, t);
    for (std::size_t k = 1; k <= K; ++k) {
        for (std::size_t t = (k + 1) * h - 1; t < n; ++t) {
            double best = inf;
            std::size_t best_s = 0;
            for (std::size_t s = k * h - 1; s + h <= t; ++s) {
                const double c = dp[k - 1][s];
                if (c == inf) continue;
                const double v = c + cost(s + 1, t);
                if (v < best) {
                    best = v;
                    best_s = s;
                }
            }
            dp[k][t] = best;
            arg[k][t] = best_s;
        }
    }

    // BIC over the admissible break counts; ties keep fewer breaks.
    std::size_t best_k = 0;
    double best_bic = inf;
    const double logn = std::log(static_cast<double>(n));
    for (std::size_t k = 0; k <= K; ++k) {
        const double ssr = dp[k][n - 1];
        if (ssr == inf) continue;
        const double bic = static_cast<double>(n) * std::log(std::max(ssr, 1e-300) /
                                                             static_cast<double>(n)) +
                           static_cast<double>(2 * k + 1) * logn;
        if (bic < best_bic) {
            best_bic = bic;
            best_k = k;
        }
    }

    BreakModel model;
    model.n = n;
    model.min_segment = h;
    model.ssr = dp[best_k][n - 1];
    model.criterion = best_bic;
    std::vector<std::size_t> ends;  // 0-based last index of segments 1..best_k
    std::size_t t = n - 1;
    for (std::size_t k = best_k; k >= 1; --k) {
        const std::size_t s = arg[k][t];
        ends.push_back(s);
        t = s;
    }
    std::sort(ends.begin(), ends.end());
    std::size_t start = 0;
    for (std::size_t e : ends) {
        model.break_indices.push_back(e + 1);  // 1-based last index of the segment
        model.segment_means.push_back(cost.mean(start, e));
        start = e + 1;
    }
    model.segment_means.push_back(cost.mean(start, n - 1));
    return model;
}

std::vector<SegmentEstimate> subsample_estimates(const TimeSeries& x, const BreakModel& breaks,
                                                 const EstimatorSpec& spec,
                                                 const BandwidthRule& rule) {
    validate(x);
    const std::size_t n = x.size();

    std::vector<std::pair<std::size_t, std::size_t>> ranges;  // 1-based inclusive
    ranges.emplace_back(1, n);                                // full sample first
    std::size_t start = 1;
    for (std::size_t e : breaks.break_indices) {
        ranges.emplace_back(start, e);
        start = e + 1;
    }
    if (!breaks.break_indices.empty()) ranges.emplace_back(start, n);

    std::vector<SegmentEstimate> rows;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        const auto [a, b] = ranges[i];
        SegmentEstimate row;
        row.label = (i == 0) ? "full" : "segment " + std::to_string(i);
        row.start = a;
        row.end = b;
        row.n = b - a + 1;
        try {
            std::vector<double> vals(x.values.begin() + static_cast<long>(a - 1),
                                     x.values.begin() + static_cast<long>(b));
            double mean = 0.0;
            for (double v : vals) mean += v;
            row.mean = mean / static_cast<double>(vals.size());
            TimeSeries seg(std::move(vals), x.name, x.origin);
            row.m = resolve(rule, row.n);
            EstimatorSpec s = spec;
            s.m = row.m;
            row.result = estimate(seg, s);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace lw
