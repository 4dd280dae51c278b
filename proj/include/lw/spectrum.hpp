#ifndef LW_SPECTRUM_HPP
#define LW_SPECTRUM_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lw/series.hpp"

namespace lw {

enum class TaperKind { none, bartlett, cosine, kolmogorov, hurvich_chen };

/// Frequency subsampling order: 1 for none, 2 for bartlett, 3 for cosine
/// and kolmogorov. hurvich_chen has no Velasco order and maps to 1.
int taper_order(TaperKind kind);

std::string taper_name(TaperKind kind);
TaperKind taper_from_name(const std::string& name);

/// Periodogram ordinates at a set of strictly increasing frequencies in
/// (0, pi]. `n_used` is the effective sample length (n-1 for the
/// Hurvich-Chen path, which differences internally).
struct Periodogram {
    std::vector<double> freqs;
    std::vector<double> ords;
    std::size_t n_used = 0;
    TaperKind taper = TaperKind::none;
};

/// Fourier frequencies lambda_j = 2 pi j / n for j = p, 2p, ... <= m.
/// p = 1 yields j = 1..m.
std::vector<std::pair<std::size_t, double>> fourier_freqs(std::size_t n, std::size_t m,
                                                          int subsample_p);

/// Taper weights h_1..h_n. Real tapers are returned with zero imaginary
/// part; hurvich_chen is the complex difference taper used on first
/// differences.
std::vector<std::complex<double>> taper_weights(TaperKind kind, std::size_t n);

/// Tapered periodogram with the taper's subsampling convention.
/// For hurvich_chen the input is first-differenced internally and the
/// ordinates sit at shifted frequencies 2 pi (j + 1/2) / (n-1), j = 1..m.
Periodogram periodogram(const TimeSeries& x, TaperKind kind, std::size_t m);

}  // namespace lw

#endif  // LW_SPECTRUM_HPP
