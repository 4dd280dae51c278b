#ifndef LW_ESTIMATORS_HPP
#define LW_ESTIMATORS_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lw/series.hpp"
#include "lw/spectrum.hpp"

namespace lw {

enum class Method { lw, velasco, hc, elw, two_step_elw };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

enum class MeanCorrection { none, sample, first, adaptive };

/// Trend handling for the two-step estimator: either rely on the adaptive
/// mean alone, or remove a polynomial of the given degree by OLS first.
struct TrendSpec {
    bool detrend = false;
    int degree = 0;
};

/// Everything that determines an estimation run. Bounds left as NaN pick
/// up the method defaults: [-1, 2] for lw/velasco/hc and [-1, 3] for the
/// exact estimators (whose search interval must stay narrower than 4.5).
struct EstimatorSpec {
    Method method = Method::lw;
    TaperKind taper = TaperKind::kolmogorov;  // velasco only
    std::size_t m = 0;
    double lower = std::numeric_limits<double>::quiet_NaN();
    double upper = std::numeric_limits<double>::quiet_NaN();
    MeanCorrection mean_correction = MeanCorrection::none;  // elw only
    TrendSpec trend;                                        // two_step_elw only
    Method first_step = Method::hc;                         // two_step_elw: hc or velasco
    TaperKind first_step_taper = TaperKind::kolmogorov;

    /// Bounds with method defaults substituted for NaN.
    std::pair<double, double> bounds() const;
};

std::pair<double, double> default_bounds(Method m);

EstimatorSpec make_spec(Method method, std::size_t m);

/// Throws std::invalid_argument if the spec is malformed or incompatible
/// with a series of length n.
void validate(const EstimatorSpec& spec, std::size_t n);

struct EstimateResult {
    double d_hat = 0.0;
    double se = 0.0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::string method;
    double objective_at_min = 0.0;
    bool converged = false;
    std::optional<double> mean_estimate;  // two_step_elw: mu~(d_hat)
    std::optional<double> first_step_d;   // two_step_elw
    std::vector<std::string> notes;
};

/// Local Whittle objective over whatever frequencies the periodogram
/// carries (plain, Velasco-subsampled, or HC-shifted).
/// Throws "degenerate periodogram" if any ordinate is <= 0.
double lw_objective(const Periodogram& I, double d);

/// Exact local Whittle objective: fractionally difference x - mu_hat at d
/// and evaluate the Whittle criterion on the first m Fourier frequencies.
double elw_objective(const TimeSeries& x, double d, std::size_t m, MeanCorrection mu);

/// Weight on the sample mean in the adaptive mean estimate
/// mu~(d) = w(d) xbar + (1 - w(d)) x_1.
double adaptive_mean_weight(double d);

enum class MinimizeMode { convex, global };

struct MinimizeResult {
    double x = 0.0;
    double fx = 0.0;
    bool converged = false;
    bool at_boundary = false;
};

/// Bounded scalar minimization. convex: golden-section to |interval| < tol.
/// global: coarse grid of `grid_step` then golden refinement around the
/// best grid point (required for the non-convex ELW-family objectives).
/// A non-finite objective value raises with the offending argument.
MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               MinimizeMode mode, double tol = 1e-6, double grid_step = 0.01);

/// Runs the estimator described by `spec` on x.
EstimateResult estimate(const TimeSeries& x, const EstimatorSpec& spec);

/// Two-step exact local Whittle: optional OLS detrending, a tapered
/// first-step estimate, then a single Newton step on the adaptive-mean ELW
/// objective with the Hessian clamped below at 2.
EstimateResult two_step_elw(const TimeSeries& x, std::size_t m, const TrendSpec& trend,
                            Method first_step, TaperKind first_step_taper,
                            double lower = std::numeric_limits<double>::quiet_NaN(),
                            double upper = std::numeric_limits<double>::quiet_NaN());

struct ObjectiveProfile {
    std::string method;
    std::vector<std::pair<double, double>> grid;  // (d, R(d)), d strictly increasing
    std::vector<std::size_t> minima;              // interior strict local minima
};

/// Evaluates the spec's objective on a regular grid. For two_step_elw the
/// profiled objective is the adaptive-mean ELW criterion.
ObjectiveProfile profile(const TimeSeries& x, const EstimatorSpec& spec, double lo, double hi,
                         double step);

/// Asymptotic standard error of d_hat at bandwidth m: (4m)^{-1/2} for
/// lw/elw/two_step_elw, sqrt(p Phi_p / (4m)) for Velasco tapers
/// (Phi_2 = 1.05, Phi_3 = 1.00354), sqrt(1.5 / (4m)) for hc.
double asymptotic_se(Method method, TaperKind taper, std::size_t m);

}  // namespace lw

#endif  // LW_ESTIMATORS_HPP
