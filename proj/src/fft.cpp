#include "lw/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lw::fft {

namespace {

// FFTW plan creation is not thread-safe; execution via the new-array
// interface is. Plans are created once per length with FFTW_ESTIMATE and
// FFTW_UNALIGNED so they can execute on ordinary vector storage, and are
// kept for the life of the process so repeated transforms of the same
// length are cheap and bit-reproducible.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan forward(std::size_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = fwd_.find(n);
        if (it != fwd_.end()) return it->second;
        std::vector<double> in(n, 0.0);
        std::vector<std::complex<double>> out(n / 2 + 1);
        fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                           reinterpret_cast<fftw_complex*>(out.data()),
                                           FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fft: failed to create r2c plan");
        fwd_.emplace(n, p);
        return p;
    }

    fftw_plan backward(std::size_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = bwd_.find(n);
        if (it != bwd_.end()) return it->second;
        std::vector<std::complex<double>> in(n / 2 + 1);
        std::vector<double> out(n, 0.0);
        fftw_plan p = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                           reinterpret_cast<fftw_complex*>(in.data()),
                                           out.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fft: failed to create c2r plan");
        bwd_.emplace(n, p);
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::size_t, fftw_plan> fwd_;
    std::map<std::size_t, fftw_plan> bwd_;
};

}  // namespace

void rfft_into(const double* x, std::size_t len, std::size_t n,
               std::vector<std::complex<double>>& out) {
    if (n == 0) throw std::invalid_argument("fft: n must be positive");
    if (len > n) len = n;
    out.assign(n / 2 + 1, {0.0, 0.0});
    static thread_local std::vector<double> padded;
    padded.assign(n, 0.0);
    std::memcpy(padded.data(), x, len * sizeof(double));
    fftw_plan p = PlanCache::instance().forward(n);
    fftw_execute_dft_r2c(p, padded.data(), reinterpret_cast<fftw_complex*>(out.data()));
}

std::vector<std::complex<double>> rfft(const std::vector<double>& x, std::size_t n) {
    std::vector<std::complex<double>> out;
    rfft_into(x.data(), x.size(), n, out);
    return out;
}

void irfft_into(const std::vector<std::complex<double>>& spec, std::size_t n,
                std::vector<double>& out) {
    if (spec.size() != n / 2 + 1)
        throw std::invalid_argument("fft: spectrum size does not match length");
    out.assign(n, 0.0);
    // c2r destroys its input, so transform a scratch copy.
    static thread_local std::vector<std::complex<double>> scratch;
    scratch = spec;
    fftw_plan p = PlanCache::instance().backward(n);
    fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
    const double inv = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= inv;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& spec, std::size_t n) {
    std::vector<double> out;
    irfft_into(spec, n, out);
    return out;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace lw::fft
