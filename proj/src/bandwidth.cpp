#include "lw/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lw/fft.hpp"
#include "lw/rng.hpp"
#include "lw/spectrum.hpp"

namespace lw {

void validate(const BandwidthRule& rule) {
    switch (rule.kind) {
        case BandwidthRule::Kind::power_floor:
        case BandwidthRule::Kind::power_round:
            if (!(rule.alpha > 0.0 && rule.alpha < 1.0))
                throw std::invalid_argument("bandwidth rule: alpha must lie in (0, 1)");
            return;
        case BandwidthRule::Kind::fixed:
            if (rule.fixed_m < 2)
                throw std::invalid_argument("bandwidth rule: fixed m must be >= 2");
            return;
        case BandwidthRule::Kind::bootstrap:
            if (rule.B < 50)
                throw std::invalid_argument("bandwidth rule: bootstrap needs B >= 50");
            return;
    }
    throw std::invalid_argument("bandwidth rule: unknown kind");
}

namespace {

std::size_t clamp_bandwidth(double raw, std::size_t n, std::vector<std::string>* notes) {
    const std::size_t half = n / 2;
    double m = raw;
    if (m < 2.0) {
        if (notes) notes->push_back("bandwidth clamped up to 2");
        m = 2.0;
    }
    if (m > static_cast<double>(half)) {
        if (notes) notes->push_back("bandwidth clamped down to n/2 = " + std::to_string(half));
        m = static_cast<double>(half);
    }
    return static_cast<std::size_t>(m);
}

}  // namespace

std::size_t resolve(const BandwidthRule& rule, std::size_t n, std::vector<std::string>* notes) {
    validate(rule);
    if (n < 16) throw std::invalid_argument("resolve: n must be >= 16");
    switch (rule.kind) {
        case BandwidthRule::Kind::power_floor:
            return clamp_bandwidth(std::floor(std::pow(static_cast<double>(n), rule.alpha)), n,
                                   notes);
        case BandwidthRule::Kind::power_round:
            return clamp_bandwidth(std::round(std::pow(static_cast<double>(n), rule.alpha)), n,
                                   notes);
        case BandwidthRule::Kind::fixed:
            return clamp_bandwidth(static_cast<double>(rule.fixed_m), n, notes);
        case BandwidthRule::Kind::bootstrap:
            throw std::invalid_argument(
                "resolve: the bootstrap rule needs the data series; use resolve(rule, x, seed)");
    }
    throw std::invalid_argument("resolve: unknown rule");
}

std::size_t resolve(const BandwidthRule& rule, const TimeSeries& x, std::uint64_t seed,
                    std::vector<std::string>* notes) {
    if (rule.kind != BandwidthRule::Kind::bootstrap) return resolve(rule, x.size(), notes);
    validate(rule);
    const std::size_t n = x.size();
    if (n < 16) throw std::invalid_argument("resolve: n must be >= 16");
    const std::size_t k_n = rule.k_n ? rule.k_n : default_bootstrap_width(n);
    const auto grid = rule.grid.empty() ? default_bootstrap_grid(n) : rule.grid;
    const BootstrapMseCurve curve = bootstrap_select(x, rule.B, k_n, grid, seed);
    return clamp_bandwidth(static_cast<double>(curve.m_star), n, notes);
}

std::vector<ScanRow> scan(const TimeSeries& x, const EstimatorSpec& spec, std::size_t lo,
                          std::size_t hi, std::size_t step) {
    validate(x);
    if (lo > hi || step == 0) throw std::invalid_argument("scan: empty bandwidth range");
    if (hi > x.size() / 2) throw std::invalid_argument("scan: upper bandwidth exceeds n/2");
    std::vector<ScanRow> rows;
    for (std::size_t m = lo; m <= hi; m += step) {
        ScanRow row;
        row.m = m;
        try {
            EstimatorSpec s = spec;
            s.m = m;
            row.result = estimate(x, s);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::size_t> default_bootstrap_grid(std::size_t n) {
    const double lo = std::floor(std::pow(static_cast<double>(n), 0.5));
    const double hi = std::floor(static_cast<double>(n) / 2.0);
    std::vector<std::size_t> grid;
    for (int i = 0; i < 20; ++i) {
        const double f = static_cast<double>(i) / 19.0;
        const double m = std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
        grid.push_back(static_cast<std::size_t>(std::lround(m)));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::size_t default_bootstrap_width(std::size_t n) {
    std::size_t k = static_cast<std::size_t>(
        std::max(11.0, std::round(static_cast<double>(n) / 33.0)));
    if (k % 2 == 0) ++k;
    return k;
}

BootstrapMseCurve bootstrap_select(const TimeSeries& x, std::size_t B, std::size_t k_n,
                                   const std::vector<std::size_t>& grid, std::uint64_t seed) {
    validate(x);
    const std::size_t n = x.size();
    const std::size_t half = n / 2;
    if (grid.empty()) throw std::invalid_argument("bootstrap_select: empty candidate grid");
    for (std::size_t m : grid)
        if (m < 2 || m > half)
            throw std::invalid_argument("bootstrap_select: candidate m out of [2, n/2]");
    if (k_n < 3 || k_n >= half)
        throw std::invalid_argument("bootstrap_select: need 3 <= k_n < n/2");
    if (B < 1) throw std::invalid_argument("bootstrap_select: B must be >= 1");

    // Full periodogram at j = 1..n/2 once.
    const auto W = fft::rfft(x.values, n);
    std::vector<double> lambda(half), logl(half), ords(half);
    const double norm = 2.0 * std::numbers::pi * static_cast<double>(n);
    for (std::size_t j = 1; j <= half; ++j) {
        lambda[j - 1] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        logl[j - 1] = std::log(lambda[j - 1]);
        ords[j - 1] = std::norm(W[j]) / norm;
    }

    // Pilot LW fit standardizes the ordinates.
    const std::size_t m0 =
        std::min(half, static_cast<std::size_t>(std::floor(std::pow(double(n), 0.7))));
    Periodogram pilot;
    pilot.freqs.assign(lambda.begin(), lambda.begin() + static_cast<long>(m0));
    pilot.ords.assign(ords.begin(), ords.begin() + static_cast<long>(m0));
    pilot.n_used = n;
    const auto [lo_b, hi_b] = default_bounds(Method::lw);
    const MinimizeResult pilot_fit = minimize_scalar(
        [&pilot](double d) { return lw_objective(pilot, d); }, lo_b, hi_b, MinimizeMode::convex);
    const double d0 = pilot_fit.x;
    double G0 = 0.0;
    for (std::size_t j = 0; j < m0; ++j) G0 += ords[j] * std::exp(2.0 * d0 * logl[j]);
    G0 /= static_cast<double>(m0);
    if (!(G0 > 0.0)) throw std::runtime_error("bootstrap_select: degenerate pilot fit");

    // Standardized ordinates s_j = I_j / (G0 lambda^{-2 d0}).
    std::vector<double> s(half);
    for (std::size_t j = 0; j < half; ++j)
        s[j] = ords[j] * std::exp(2.0 * d0 * logl[j]) / G0;

    const std::size_t hw = (k_n - 1) / 2;
    const std::size_t max_m = *std::max_element(grid.begin(), grid.end());

    BootstrapMseCurve curve;
    curve.candidates = grid;
    curve.mse.assign(grid.size(), 0.0);
    curve.pilot_d = d0;
    curve.pilot_m = m0;

    std::vector<double> star(max_m);
    Periodogram boot;
    boot.n_used = n;
    for (std::size_t b = 1; b <= B; ++b) {
        // Each ordinate resamples uniformly within its window; the draw for
        // position j in replication b depends only on (seed, b, j).
        for (std::size_t j = 0; j < max_m; ++j) {
            const std::size_t lo = (j >= hw) ? j - hw : 0;
            const std::size_t hi = std::min(half - 1, j + hw);
            Rng rng(mix_keys(seed, b, j + 1));
            const std::size_t pick = lo + rng.uniform_below(hi - lo + 1);
            star[j] = std::exp(-2.0 * d0 * logl[j]) * G0 * s[pick];
        }
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            const std::size_t m = grid[gi];
            boot.freqs.assign(lambda.begin(), lambda.begin() + static_cast<long>(m));
            boot.ords.assign(star.begin(), star.begin() + static_cast<long>(m));
            const MinimizeResult fit = minimize_scalar(
                [&boot](double d) { return lw_objective(boot, d); }, lo_b, hi_b,
                MinimizeMode::convex);
            const double dev = fit.x - d0;
            curve.mse[gi] += dev * dev;
        }
    }
    for (double& v : curve.mse) v /= static_cast<double>(B);

    std::size_t best = 0;
    for (std::size_t gi = 1; gi < grid.size(); ++gi)
        if (curve.mse[gi] < curve.mse[best]) best = gi;  // ties keep the smaller m
    curve.m_star = grid[best];
    return curve;
}

}  // namespace lw
