#ifndef LW_FFT_HPP
#define LW_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace lw::fft {

/// Forward real-to-complex transform: X_k = sum_{t=0}^{n-1} x_t e^{-2pi i k t / n}
/// for k = 0..n/2. Input shorter than n is zero-padded.
std::vector<std::complex<double>> rfft(const std::vector<double>& x, std::size_t n);

/// Inverse of rfft, including the 1/n normalization. `spec` must hold
/// n/2 + 1 bins.
std::vector<double> irfft(const std::vector<std::complex<double>>& spec, std::size_t n);

/// In-place style variants that reuse caller-owned buffers (hot paths).
void rfft_into(const double* x, std::size_t len, std::size_t n,
               std::vector<std::complex<double>>& out);
void irfft_into(const std::vector<std::complex<double>>& spec, std::size_t n,
                std::vector<double>& out);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace lw::fft

#endif  // LW_FFT_HPP
