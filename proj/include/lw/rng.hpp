#ifndef LW_RNG_HPP
#define LW_RNG_HPP

#include <cstdint>

namespace lw {

/// One round of the splitmix64 output function.
std::uint64_t splitmix64_step(std::uint64_t& state);

/// Stable 64-bit key mixing, used to derive independent substreams from
/// (seed, cell, replication) style tuples. Order-sensitive by design.
std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b);
std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b, std::uint64_t c);

/// Inverse standard normal CDF (Wichura's AS 241, double precision).
double inverse_normal_cdf(double p);

/// Small deterministic generator. splitmix64 stream; uniforms take the top
/// 53 bits; normal deviates go through the inverse CDF so the sequence is
/// identical on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_step(state_); }

    /// Uniform on (0, 1): (k + 0.5) * 2^-53 with k the top 53 bits.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound) via 128-bit multiply (Lemire reduction
    /// without rejection; the bias is < 2^-40 for the bounds used here).
    std::uint64_t uniform_below(std::uint64_t bound) {
        const unsigned __int128 m =
            static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
        return static_cast<std::uint64_t>(m >> 64);
    }

    double normal() { return inverse_normal_cdf(uniform01()); }

  private:
    std::uint64_t state_;
};

}  // namespace lw

#endif  // LW_RNG_HPP
