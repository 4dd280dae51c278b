#include "lw/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "lw/fft.hpp"
#include "lw/fracdiff.hpp"

namespace lw {

namespace {

constexpr double kPhi2 = 1.05000;   // order-2 taper variance inflation
constexpr double kPhi3 = 1.00354;   // order-3 taper variance inflation
constexpr double kHcVariance = 1.5; // Hurvich-Chen asymptotic variance * 4
constexpr double kBoundaryEps = 1e-6;
constexpr double kNewtonFdStep = 1e-3;
constexpr double kElwMaxWidth = 4.5;

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::lw: return "lw";
        case Method::velasco: return "velasco";
        case Method::hc: return "hc";
        case Method::elw: return "elw";
        case Method::two_step_elw: return "2elw";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "lw") return Method::lw;
    if (name == "velasco" || name == "v") return Method::velasco;
    if (name == "hc") return Method::hc;
    if (name == "elw") return Method::elw;
    if (name == "2elw" || name == "two_step_elw") return Method::two_step_elw;
    throw std::invalid_argument("unknown method '" + name + "'");
}

std::pair<double, double> default_bounds(Method m) {
    switch (m) {
        case Method::lw:
        case Method::velasco:
        case Method::hc:
            return {-1.0, 2.0};
        case Method::elw:
        case Method::two_step_elw:
            return {-1.0, 3.0};
    }
    return {-1.0, 2.0};
}

std::pair<double, double> EstimatorSpec::bounds() const {
    auto [lo, hi] = default_bounds(method);
    if (!std::isnan(lower)) lo = lower;
    if (!std::isnan(upper)) hi = upper;
    return {lo, hi};
}

EstimatorSpec make_spec(Method method, std::size_t m) {
    EstimatorSpec spec;
    spec.method = method;
    spec.m = m;
    return spec;
}

void validate(const EstimatorSpec& spec, std::size_t n) {
    const auto [lo, hi] = spec.bounds();
    if (!(lo < hi)) throw std::invalid_argument("estimator spec: bounds must satisfy lower < upper");
    if ((spec.method == Method::elw || spec.method == Method::two_step_elw) &&
        hi - lo >= kElwMaxWidth)
        throw std::invalid_argument(
            "estimator spec: ELW-family optimization interval must be narrower than 4.5");
    if (spec.m < 2) throw std::invalid_argument("estimator spec: bandwidth m must be >= 2");
    const std::size_t eff_n = (spec.method == Method::hc) ? n - 1 : n;
    if (n < 2 || spec.m > eff_n / 2 || eff_n < 2 * spec.m)
        throw std::invalid_argument("estimator spec: bandwidth m exceeds floor(n/2)");
    if (spec.method == Method::velasco) {
        if (spec.taper != TaperKind::bartlett && spec.taper != TaperKind::cosine &&
            spec.taper != TaperKind::kolmogorov)
            throw std::invalid_argument("estimator spec: velasco taper must be bartlett, cosine, or kolmogorov");
        if (spec.m < static_cast<std::size_t>(taper_order(spec.taper)))
            throw std::invalid_argument("estimator spec: bandwidth below taper order");
    }
    if (spec.method == Method::elw && spec.mean_correction == MeanCorrection::adaptive)
        throw std::invalid_argument("estimator spec: elw mean correction must be none, sample, or first");
    if (spec.method == Method::two_step_elw) {
        if (spec.first_step != Method::hc && spec.first_step != Method::velasco)
            throw std::invalid_argument("estimator spec: first step must be hc or velasco");
        if (spec.trend.detrend && spec.trend.degree < 0)
            throw std::invalid_argument("estimator spec: trend degree must be >= 0");
    }
}

double lw_objective(const Periodogram& I, double d) {
    const std::size_t M = I.ords.size();
    if (M == 0) throw std::invalid_argument("lw_objective: empty periodogram");
    // Work with log lambda centered at its mean; the centered form keeps
    // lambda^{2d} well-scaled for |d| up to several units.
    double clog = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        if (!(I.ords[j] > 0.0))
            throw std::runtime_error("degenerate periodogram: zero ordinate at frequency " +
                                     std::to_string(I.freqs[j]));
        clog += std::log(I.freqs[j]);
    }
    clog /= static_cast<double>(M);
    double acc = 0.0;
    for (std::size_t j = 0; j < M; ++j)
        acc += I.ords[j] * std::exp(2.0 * d * (std::log(I.freqs[j]) - clog));
    return std::log(acc / static_cast<double>(M));
}

double adaptive_mean_weight(double d) {
    if (d <= 0.5) return 1.0;
    if (d >= 0.75) return 0.0;
    return 0.5 * (1.0 + std::cos(4.0 * std::numbers::pi * d));
}

namespace {

/// The ELW criterion as a reusable functor: the padded transforms of x and
/// of the all-ones sequence are cached, so each evaluation costs three FFTs
/// (coefficients, inverse convolution, periodogram).
class ElwObjective {
  public:
    ElwObjective(const std::vector<double>& x, std::size_t m, MeanCorrection mu)
        : n_(x.size()), m_(m), mu_(mu) {
        if (n_ < 2 * m_ || m_ < 1)
            throw std::invalid_argument("elw_objective: need n >= 2m and m >= 1");
        len_ = fft::next_pow2(2 * n_ - 1);
        fft::rfft_into(x.data(), n_, len_, xhat_);
        const std::vector<double> ones(n_, 1.0);
        fft::rfft_into(ones.data(), n_, len_, onehat_);
        xbar_ = 0.0;
        xss_ = 0.0;
        for (double v : x) {
            xbar_ += v;
            xss_ += v * v;
        }
        xbar_ /= static_cast<double>(n_);
        xfirst_ = x.front();
        mean_log_freq_ = 0.0;
        for (std::size_t j = 1; j <= m_; ++j)
            mean_log_freq_ += std::log(2.0 * std::numbers::pi * static_cast<double>(j) /
                                       static_cast<double>(n_));
        mean_log_freq_ /= static_cast<double>(m_);
    }

    double operator()(double d) const {
        double mu_hat = 0.0;
        switch (mu_) {
            case MeanCorrection::none: mu_hat = 0.0; break;
            case MeanCorrection::sample: mu_hat = xbar_; break;
            case MeanCorrection::first: mu_hat = xfirst_; break;
            case MeanCorrection::adaptive: {
                const double w = adaptive_mean_weight(d);
                mu_hat = w * xbar_ + (1.0 - w) * xfirst_;
                break;
            }
        }

        pi_.resize(n_);
        pi_[0] = 1.0;
        for (std::size_t k = 1; k < n_; ++k)
            pi_[k] = pi_[k - 1] * ((static_cast<double>(k) - 1.0 - d) / static_cast<double>(k));
        fft::rfft_into(pi_.data(), n_, len_, pihat_);
        prod_.resize(pihat_.size());
        for (std::size_t i = 0; i < pihat_.size(); ++i)
            prod_[i] = pihat_[i] * (xhat_[i] - mu_hat * onehat_[i]);
        fft::irfft_into(prod_, len_, diff_);

        fft::rfft_into(diff_.data(), n_, n_, bins_);
        double mean_ord = 0.0;
        for (std::size_t j = 1; j <= m_; ++j) mean_ord += std::norm(bins_[j]);
        mean_ord /= (2.0 * std::numbers::pi * static_cast<double>(n_) * static_cast<double>(m_));
        // A numerically zero differenced series leaves only FFT noise, many
        // orders of magnitude below the input power under this normalization.
        const double floor = 1e-20 * xss_ / (2.0 * std::numbers::pi * static_cast<double>(n_));
        if (!(mean_ord > floor))
            throw std::runtime_error("degenerate periodogram: fractionally differenced series "
                                     "has no power at the first m frequencies");
        return std::log(mean_ord) - 2.0 * d * mean_log_freq_;
    }

  private:
    std::size_t n_, m_, len_ = 0;
    MeanCorrection mu_;
    double xbar_ = 0.0, xfirst_ = 0.0, xss_ = 0.0, mean_log_freq_ = 0.0;
    std::vector<std::complex<double>> xhat_, onehat_;
    mutable std::vector<double> pi_, diff_;
    mutable std::vector<std::complex<double>> pihat_, prod_, bins_;
};

}  // namespace

double elw_objective(const TimeSeries& x, double d, std::size_t m, MeanCorrection mu) {
    validate(x);
    return ElwObjective(x.values, m, mu)(d);
}

namespace {

double checked_eval(const std::function<double(double)>& f, double d) {
    const double v = f(d);
    if (!std::isfinite(v))
        throw std::runtime_error("minimize_scalar: objective is not finite at d = " +
                                 std::to_string(d));
    return v;
}

MinimizeResult golden_section(const std::function<double(double)>& f, double lo, double hi,
                              double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double e = a + invphi * (b - a);
    double fc = checked_eval(f, c);
    double fe = checked_eval(f, e);
    int iter = 0;
    while (b - a > tol && iter < 200) {
        if (fc < fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - invphi * (b - a);
            fc = checked_eval(f, c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + invphi * (b - a);
            fe = checked_eval(f, e);
        }
        ++iter;
    }
    MinimizeResult out;
    out.x = 0.5 * (a + b);
    out.fx = checked_eval(f, out.x);
    out.converged = (b - a) <= tol;
    out.at_boundary = (out.x - lo <= tol) || (hi - out.x <= tol);
    return out;
}

}  // namespace

MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               MinimizeMode mode, double tol, double grid_step) {
    if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: lo must be < hi");
    if (mode == MinimizeMode::convex) return golden_section(f, lo, hi, tol);

    // Global: coarse grid, then a convex pass in the winning bracket.
    std::vector<double> grid;
    for (double d = lo; d < hi;  d += grid_step) grid.push_back(d);
    grid.push_back(hi);
    std::size_t best = 0;
    double best_val = checked_eval(f, grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = checked_eval(f, grid[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double a = (best == 0) ? grid.front() : grid[best - 1];
    const double b = (best + 1 == grid.size()) ? grid.back() : grid[best + 1];
    MinimizeResult out = (a < b) ? golden_section(f, a, b, tol)
                                 : MinimizeResult{grid[best], best_val, true, false};
    if (out.fx > best_val) {  // refinement must never lose to the grid
        out.x = grid[best];
        out.fx = best_val;
    }
    out.at_boundary = (out.x - lo <= tol) || (hi - out.x <= tol);
    return out;
}

double asymptotic_se(Method method, TaperKind taper, std::size_t m) {
    if (m < 1) throw std::invalid_argument("asymptotic_se: m must be >= 1");
    const double fourm = 4.0 * static_cast<double>(m);
    switch (method) {
        case Method::lw:
        case Method::elw:
        case Method::two_step_elw:
            return std::sqrt(1.0 / fourm);
        case Method::hc:
            return std::sqrt(kHcVariance / fourm);
        case Method::velasco: {
            const int p = taper_order(taper);
            const double phi = (p == 2) ? kPhi2 : kPhi3;
            return std::sqrt(static_cast<double>(p) * phi / fourm);
        }
    }
    throw std::invalid_argument("asymptotic_se: unknown method");
}

namespace {

void append_boundary_note(EstimateResult& r, double lo, double hi) {
    if (std::fabs(r.d_hat - lo) <= kBoundaryEps)
        r.notes.push_back("estimate at lower bound " + std::to_string(lo));
    else if (std::fabs(r.d_hat - hi) <= kBoundaryEps)
        r.notes.push_back("estimate at upper bound " + std::to_string(hi));
}

EstimateResult estimate_whittle(const TimeSeries& x, const EstimatorSpec& spec) {
    const auto [lo, hi] = spec.bounds();
    const TaperKind taper = (spec.method == Method::lw)        ? TaperKind::none
                            : (spec.method == Method::velasco) ? spec.taper
                                                               : TaperKind::hurvich_chen;
    const Periodogram I = periodogram(x, taper, spec.m);
    const auto f = [&I](double d) { return lw_objective(I, d); };

    EstimateResult r;
    r.m = spec.m;
    r.n = x.size();
    r.method = method_name(spec.method);
    if (spec.method == Method::velasco) r.method += "(" + taper_name(spec.taper) + ")";
    r.se = asymptotic_se(spec.method, spec.taper, spec.m);

    if (spec.method == Method::hc) {
        // Estimate the memory of the differenced series, then add back the
        // removed order of integration.
        const MinimizeResult min =
            minimize_scalar(f, lo - 1.0, hi - 1.0, MinimizeMode::convex);
        r.d_hat = 1.0 + min.x;
        r.objective_at_min = min.fx;
        r.converged = min.converged;
    } else {
        const MinimizeResult min = minimize_scalar(f, lo, hi, MinimizeMode::convex);
        r.d_hat = min.x;
        r.objective_at_min = min.fx;
        r.converged = min.converged;
    }
    append_boundary_note(r, lo, hi);
    return r;
}

EstimateResult estimate_elw(const TimeSeries& x, const EstimatorSpec& spec) {
    const auto [lo, hi] = spec.bounds();
    const ElwObjective obj(x.values, spec.m, spec.mean_correction);
    const MinimizeResult min = minimize_scalar([&obj](double d) { return obj(d); }, lo, hi,
                                               MinimizeMode::global);
    EstimateResult r;
    r.d_hat = min.x;
    r.se = asymptotic_se(Method::elw, TaperKind::none, spec.m);
    r.m = spec.m;
    r.n = x.size();
    r.method = method_name(Method::elw);
    r.objective_at_min = min.fx;
    r.converged = min.converged;
    append_boundary_note(r, lo, hi);
    return r;
}

}  // namespace

EstimateResult two_step_elw(const TimeSeries& x, std::size_t m, const TrendSpec& trend,
                            Method first_step, TaperKind first_step_taper, double lower,
                            double upper) {
    EstimatorSpec self = make_spec(Method::two_step_elw, m);
    self.lower = lower;
    self.upper = upper;
    self.trend = trend;
    self.first_step = first_step;
    self.first_step_taper = first_step_taper;
    validate(self, x.size());
    const auto [lo, hi] = self.bounds();

    const TimeSeries input = trend.detrend ? detrend_ols(x, trend.degree) : x;

    EstimatorSpec first = make_spec(first_step, m);
    first.taper = first_step_taper;
    first.lower = lo;
    first.upper = hi;
    const EstimateResult step1 = estimate(input, first);

    EstimateResult r;
    r.m = m;
    r.n = x.size();
    r.method = method_name(Method::two_step_elw);
    r.se = asymptotic_se(Method::two_step_elw, TaperKind::none, m);
    r.first_step_d = step1.d_hat;
    r.converged = step1.converged;
    for (const std::string& note : step1.notes) r.notes.push_back("first step: " + note);

    double dT = step1.d_hat;
    if (dT < lo + kNewtonFdStep || dT > hi - kNewtonFdStep) {
        dT = std::clamp(dT, lo + kNewtonFdStep, hi - kNewtonFdStep);
        r.notes.push_back("first-step estimate clamped to bounds for finite differences");
    }

    // The adaptive mean is evaluated once, at the root-m-consistent
    // first-step estimate; the Newton step then acts on the ELW criterion
    // of the mean-corrected series. Differentiating through the mu~(d)
    // path instead lets its steep transition between the two mean
    // estimates blow up the step whenever the first step lands in
    // (1/2, 3/4).
    double xbar = 0.0;
    for (double v : input.values) xbar += v;
    xbar /= static_cast<double>(input.size());
    const double xfirst = input.values.front();
    const double wT = adaptive_mean_weight(dT);
    const double mu_used = wT * xbar + (1.0 - wT) * xfirst;
    std::vector<double> corrected = input.values;
    for (double& v : corrected) v -= mu_used;
    const ElwObjective obj(corrected, m, MeanCorrection::none);

    const double f0 = obj(dT);
    const double fp = obj(dT + kNewtonFdStep);
    const double fm = obj(dT - kNewtonFdStep);
    const double grad = (fp - fm) / (2.0 * kNewtonFdStep);
    const double hess = (fp - 2.0 * f0 + fm) / (kNewtonFdStep * kNewtonFdStep);

    double d2 = dT - grad / std::max(hess, 2.0);
    if (d2 < lo || d2 > hi) {
        d2 = std::clamp(d2, lo, hi);
        r.notes.push_back("Newton step clamped to bounds");
    }
    r.d_hat = d2;
    r.objective_at_min = obj(d2);
    const double w2 = adaptive_mean_weight(d2);
    r.mean_estimate = w2 * xbar + (1.0 - w2) * xfirst;
    append_boundary_note(r, lo, hi);
    return r;
}

EstimateResult estimate(const TimeSeries& x, const EstimatorSpec& spec) {
    validate(x);
    validate(spec, x.size());
    switch (spec.method) {
        case Method::lw:
        case Method::velasco:
        case Method::hc:
            return estimate_whittle(x, spec);
        case Method::elw:
            return estimate_elw(x, spec);
        case Method::two_step_elw:
            return two_step_elw(x, spec.m, spec.trend, spec.first_step, spec.first_step_taper,
                                spec.lower, spec.upper);
    }
    throw std::invalid_argument("estimate: unknown method");
}

ObjectiveProfile profile(const TimeSeries& x, const EstimatorSpec& spec, double lo, double hi,
                         double step) {
    validate(x);
    validate(spec, x.size());
    if (!(step > 0.0) || !(lo <= hi)) throw std::invalid_argument("profile: invalid grid");

    ObjectiveProfile out;
    out.method = method_name(spec.method);

    std::function<double(double)> f;
    Periodogram I;
    std::optional<ElwObjective> elw;
    TimeSeries detrended;
    switch (spec.method) {
        case Method::lw:
            I = periodogram(x, TaperKind::none, spec.m);
            f = [&I](double d) { return lw_objective(I, d); };
            break;
        case Method::velasco:
            I = periodogram(x, spec.taper, spec.m);
            f = [&I](double d) { return lw_objective(I, d); };
            break;
        case Method::hc:
            I = periodogram(x, TaperKind::hurvich_chen, spec.m);
            f = [&I](double d) { return lw_objective(I, d - 1.0); };
            break;
        case Method::elw:
            elw.emplace(x.values, spec.m, spec.mean_correction);
            f = [&elw](double d) { return (*elw)(d); };
            break;
        case Method::two_step_elw: {
            const TimeSeries* work = &x;
            if (spec.trend.detrend) {
                detrended = detrend_ols(x, spec.trend.degree);
                work = &detrended;
            }
            elw.emplace(work->values, spec.m, MeanCorrection::adaptive);
            f = [&elw](double d) { return (*elw)(d); };
            break;
        }
    }

    for (double d = lo; d <= hi + 1e-12 * std::max(1.0, std::fabs(hi)); d += step)
        out.grid.emplace_back(d, f(d));
    for (std::size_t i = 1; i + 1 < out.grid.size(); ++i)
        if (out.grid[i].second < out.grid[i - 1].second &&
            out.grid[i].second < out.grid[i + 1].second)
            out.minima.push_back(i);
    return out;
}

}  // namespace lw
