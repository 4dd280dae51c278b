#include "lw/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lw/fft.hpp"

namespace lw {

int taper_order(TaperKind kind) {
    switch (kind) {
        case TaperKind::none: return 1;
        case TaperKind::bartlett: return 2;
        case TaperKind::cosine: return 3;
        case TaperKind::kolmogorov: return 3;
        case TaperKind::hurvich_chen: return 1;
    }
    throw std::invalid_argument("taper_order: unknown taper");
}

std::string taper_name(TaperKind kind) {
    switch (kind) {
        case TaperKind::none: return "none";
        case TaperKind::bartlett: return "bartlett";
        case TaperKind::cosine: return "cosine";
        case TaperKind::kolmogorov: return "kolmogorov";
        case TaperKind::hurvich_chen: return "hurvich_chen";
    }
    return "?";
}

TaperKind taper_from_name(const std::string& name) {
    if (name == "none") return TaperKind::none;
    if (name == "bartlett") return TaperKind::bartlett;
    if (name == "cosine") return TaperKind::cosine;
    if (name == "kolmogorov") return TaperKind::kolmogorov;
    if (name == "hurvich_chen" || name == "hc") return TaperKind::hurvich_chen;
    throw std::invalid_argument("unknown taper '" + name + "'");
}

std::vector<std::pair<std::size_t, double>> fourier_freqs(std::size_t n, std::size_t m,
                                                          int subsample_p) {
    if (n < 2) throw std::invalid_argument("fourier_freqs: n must be >= 2");
    // The raw grid is defined for any j < n; periodogram() enforces the
    // statistically meaningful bound m <= n/2.
    if (m < 1 || m >= n)
        throw std::invalid_argument("fourier_freqs: bandwidth m must lie in [1, n-1]");
    if (subsample_p < 1 || subsample_p > 3)
        throw std::invalid_argument("fourier_freqs: subsample order must be 1, 2, or 3");
    const std::size_t p = static_cast<std::size_t>(subsample_p);
    if (m < p) throw std::invalid_argument("fourier_freqs: m must be >= subsample order");
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(m / p);
    for (std::size_t j = p; j <= m; j += p)
        out.emplace_back(j, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                static_cast<double>(n));
    return out;
}

std::vector<std::complex<double>> taper_weights(TaperKind kind, std::size_t n) {
    if (n < 4) throw std::invalid_argument("taper_weights: n must be >= 4");
    std::vector<std::complex<double>> h(n);
    switch (kind) {
        case TaperKind::none:
            for (auto& v : h) v = 1.0;
            return h;
        case TaperKind::bartlett: {
            // Triangular window symmetric about (n+1)/2, h_t = h_{n+1-t}.
            const double np1 = static_cast<double>(n + 1);
            for (std::size_t t = 1; t <= n; ++t)
                h[t - 1] = 1.0 - std::fabs(2.0 * static_cast<double>(t) - np1) / np1;
            return h;
        }
        case TaperKind::cosine: {
            for (std::size_t t = 1; t <= n; ++t)
                h[t - 1] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                                 static_cast<double>(t) /
                                                 static_cast<double>(n)));
            return h;
        }
        case TaperKind::kolmogorov: {
            // Order-3 Zhurbenko-Kolmogorov weights: 3-fold self-convolution of
            // a uniform window of length floor(n/3), peak scaled to 1, the
            // n mod 3 trailing positions zero.
            const std::size_t N = n / 3;
            if (N < 1) throw std::invalid_argument("taper_weights: n too small for kolmogorov");
            const std::size_t len = 3 * N - 2;
            std::vector<double> w(len, 0.0);
            // Coefficient count of z^k in (1 + z + ... + z^{N-1})^3.
            for (std::size_t k = 0; k < len; ++k) {
                const long long kk = static_cast<long long>(k);
                const long long NN = static_cast<long long>(N);
                auto c2 = [](long long v) { return v < 0 ? 0LL : (v + 1) * (v + 2) / 2; };
                const long long cnt =
                    c2(kk) - 3 * c2(kk - NN) + 3 * c2(kk - 2 * NN) - c2(kk - 3 * NN);
                w[k] = static_cast<double>(cnt);
            }
            double peak = 0.0;
            for (double v : w) peak = std::max(peak, v);
            for (std::size_t t = 0; t < n; ++t)
                h[t] = (t < len) ? w[t] / peak : 0.0;
            return h;
        }
        case TaperKind::hurvich_chen: {
            // Complex difference taper applied to first differences. Its
            // transfer function vanishes at every Fourier frequency, and the
            // tapered transform concentrates at the half-shifted frequencies
            // 2 pi (j + 1/2) / n.
            for (std::size_t t = 1; t <= n; ++t) {
                const double a = 2.0 * std::numbers::pi * static_cast<double>(t) /
                                 static_cast<double>(n);
                h[t - 1] = 0.5 * (1.0 - std::complex<double>(std::cos(a), std::sin(a)));
            }
            return h;
        }
    }
    throw std::invalid_argument("taper_weights: unknown taper");
}

namespace {

Periodogram periodogram_hc(const TimeSeries& x, std::size_t m) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("periodogram: series too short to difference");
    const std::size_t nd = n - 1;
    if (m < 1) throw std::invalid_argument("periodogram: bandwidth m must be >= 1");
    if (nd < 2 * m)
        throw std::invalid_argument("periodogram: need n - 1 >= 2m for the Hurvich-Chen taper");

    std::vector<double> dx(nd);
    for (std::size_t t = 1; t < n; ++t) dx[t - 1] = x.values[t] - x.values[t - 1];

    // With h_t = (1 - e^{2 pi i t/nd}) / 2, the tapered transform at
    // lambda_j combines the plain transforms at lambda_j and lambda_{j+1},
    // so one real FFT suffices. The forward FFT here uses the negative
    // exponent, which flips the inter-bin phase relative to the
    // positive-exponent transform; the factor below compensates.
    const auto W = fft::rfft(dx, nd);
    const std::size_t half = nd / 2;
    auto bin = [&](std::size_t j) -> std::complex<double> {
        if (j <= half) return W[j];
        return std::conj(W[nd - j]);  // mirror above Nyquist
    };
    const std::complex<double> phase =
        std::polar(1.0, -2.0 * std::numbers::pi / static_cast<double>(nd));

    Periodogram out;
    out.taper = TaperKind::hurvich_chen;
    out.n_used = nd;
    out.freqs.resize(m);
    out.ords.resize(m);
    const double norm = 2.0 * std::numbers::pi * static_cast<double>(nd);
    for (std::size_t j = 1; j <= m; ++j) {
        const std::complex<double> w = 0.5 * (bin(j) - phase * bin(j + 1));
        out.freqs[j - 1] = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) /
                           static_cast<double>(nd);
        out.ords[j - 1] = std::norm(w) / norm;
    }
    return out;
}

}  // namespace

Periodogram periodogram(const TimeSeries& x, TaperKind kind, std::size_t m) {
    validate(x);
    if (kind == TaperKind::hurvich_chen) return periodogram_hc(x, m);

    const std::size_t n = x.size();
    if (m < 1 || m > n / 2)
        throw std::invalid_argument("periodogram: bandwidth m must lie in [1, n/2]");
    if (n < 2 * m) throw std::invalid_argument("periodogram: series too short for bandwidth");

    const int p = taper_order(kind);
    const auto freqs = fourier_freqs(n, m, p);

    std::vector<double> y(n);
    if (kind == TaperKind::none) {
        y = x.values;
    } else {
        const auto h = taper_weights(kind, n);
        for (std::size_t t = 0; t < n; ++t) y[t] = h[t].real() * x.values[t];
    }
    const auto W = fft::rfft(y, n);

    Periodogram out;
    out.taper = kind;
    out.n_used = n;
    out.freqs.reserve(freqs.size());
    out.ords.reserve(freqs.size());
    const double norm = 2.0 * std::numbers::pi * static_cast<double>(n);
    for (const auto& [j, lambda] : freqs) {
        out.freqs.push_back(lambda);
        out.ords.push_back(std::norm(W[j]) / norm);
    }
    return out;
}

}  // namespace lw
