#include "lw/fracdiff.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "lw/fft.hpp"

namespace lw {

FracDiffCoeffs fracdiff_coeffs(double d, std::size_t n) {
    if (n == 0) throw std::invalid_argument("fracdiff_coeffs: n must be >= 1");
    if (!std::isfinite(d)) throw std::invalid_argument("fracdiff_coeffs: d must be finite");
    FracDiffCoeffs c;
    c.d = d;
    c.pi.resize(n);
    c.pi[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k)
        c.pi[k] = c.pi[k - 1] * ((static_cast<double>(k) - 1.0 - d) / static_cast<double>(k));
    return c;
}

std::vector<double> fracdiff_naive(const std::vector<double>& x, double d) {
    if (x.empty()) throw std::invalid_argument("fracdiff_naive: empty input");
    const std::size_t n = x.size();
    const FracDiffCoeffs c = fracdiff_coeffs(d, n);
    std::vector<double> y(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= t; ++k) acc += c.pi[k] * x[t - k];
        y[t] = acc;
    }
    return y;
}

std::vector<double> fracdiff_fast(const std::vector<double>& x, double d) {
    if (x.empty()) throw std::invalid_argument("fracdiff_fast: empty input");
    const std::size_t n = x.size();
    if (n < 64) return fracdiff_naive(x, d);  // setup cost dominates below this

    const std::size_t len = fft::next_pow2(2 * n - 1);
    const FracDiffCoeffs c = fracdiff_coeffs(d, n);
    const auto xs = fft::rfft(x, len);
    const auto ps = fft::rfft(c.pi, len);
    std::vector<std::complex<double>> prod(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) prod[i] = xs[i] * ps[i];
    std::vector<double> full = fft::irfft(prod, len);
    full.resize(n);
    return full;
}

TimeSeries fracdiff_naive(const TimeSeries& x, double d) {
    TimeSeries out(fracdiff_naive(x.values, d), x.name, x.origin);
    return out;
}

TimeSeries fracdiff_fast(const TimeSeries& x, double d) {
    TimeSeries out(fracdiff_fast(x.values, d), x.name, x.origin);
    return out;
}

}  // namespace lw
