#ifndef LW_FRACDIFF_HPP
#define LW_FRACDIFF_HPP

#include <cstddef>
#include <vector>

#include "lw/series.hpp"

namespace lw {

/// Fractional-differencing coefficients pi_0..pi_{n-1} for (1-L)^d.
struct FracDiffCoeffs {
    double d = 0.0;
    std::vector<double> pi;
};

/// pi_0 = 1, pi_k = pi_{k-1} (k - 1 - d) / k.
FracDiffCoeffs fracdiff_coeffs(double d, std::size_t n);

/// Truncated fractional difference y_t = sum_{k=0}^{t-1} pi_k(d) x_{t-k},
/// computed by direct O(n^2) convolution. Reference implementation for the
/// fast path; preferable only for tiny inputs.
std::vector<double> fracdiff_naive(const std::vector<double>& x, double d);

/// Same value contract as fracdiff_naive, via zero-padded circular
/// convolution at the smallest power-of-two length >= 2n-1. O(n log n).
std::vector<double> fracdiff_fast(const std::vector<double>& x, double d);

TimeSeries fracdiff_naive(const TimeSeries& x, double d);
TimeSeries fracdiff_fast(const TimeSeries& x, double d);

}  // namespace lw

#endif  // LW_FRACDIFF_HPP
