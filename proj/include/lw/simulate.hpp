#ifndef LW_SIMULATE_HPP
#define LW_SIMULATE_HPP

#include <cstdint>

#include "lw/series.hpp"

namespace lw {

/// ARFIMA(1, d, 0) sample-path specification. The process is integrated
/// from zero initial conditions (truncated fractional filter), the AR(1)
/// part starts from its stationary distribution, and mu + beta*t is added
/// on top.
struct SimSpec {
    std::size_t n = 500;
    double d = 0.0;
    double rho = 0.0;
    double mu = 0.0;
    double beta = 0.0;
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

void validate(const SimSpec& spec);

/// Draws one sample path. Deterministic in the spec alone: Gaussian
/// deviates come from a seeded splitmix64 stream through the inverse
/// normal CDF, so identical specs give bit-identical paths on any
/// platform and under any threading.
TimeSeries arfima(const SimSpec& spec);

}  // namespace lw

#endif  // LW_SIMULATE_HPP
