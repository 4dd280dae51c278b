#include "lw/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lw/fracdiff.hpp"
#include "lw/rng.hpp"

namespace lw {

void validate(const SimSpec& spec) {
    if (spec.n < 8) throw std::invalid_argument("SimSpec: n must be >= 8");
    if (!(std::fabs(spec.rho) < 1.0))
        throw std::invalid_argument("SimSpec: |rho| must be < 1");
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("SimSpec: sigma must be > 0");
    if (!std::isfinite(spec.d) || !std::isfinite(spec.mu) || !std::isfinite(spec.beta))
        throw std::invalid_argument("SimSpec: parameters must be finite");
}

TimeSeries arfima(const SimSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);

    // u_t = rho u_{t-1} + sigma z_t with a stationary start, so the
    // short-run input is mean-zero stationary from t = 1 on.
    std::vector<double> u(spec.n);
    if (spec.rho == 0.0) {
        for (std::size_t t = 0; t < spec.n; ++t) u[t] = spec.sigma * rng.normal();
    } else {
        u[0] = spec.sigma * rng.normal() / std::sqrt(1.0 - spec.rho * spec.rho);
        for (std::size_t t = 1; t < spec.n; ++t)
            u[t] = spec.rho * u[t - 1] + spec.sigma * rng.normal();
    }

    // Truncated fractional integration: X_t = 0 for t <= 0 is implicit in
    // the finite convolution.
    std::vector<double> x = fracdiff_fast(u, -spec.d);
    for (std::size_t t = 0; t < spec.n; ++t)
        x[t] += spec.mu + spec.beta * static_cast<double>(t + 1);

    std::string origin = "arfima(n=" + std::to_string(spec.n) + ",d=" + std::to_string(spec.d) +
                         ",rho=" + std::to_string(spec.rho) + ",seed=" +
                         std::to_string(spec.seed) + ")";
    return TimeSeries(std::move(x), "sim", std::move(origin));
}

}  // namespace lw
