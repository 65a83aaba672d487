#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace zerocorr {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// Every draw is a pure function of (seed, stream, index), so Monte Carlo
// results are bit-identical for any partitioning of the index range across
// workers.  A (seed, stream) pair addresses an independent substream; the
// index walks along it.
namespace philox {

inline constexpr uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr uint32_t kWeyl1 = 0xBB67AE85u;
inline constexpr uint32_t kMult0 = 0xD2511F53u;
inline constexpr uint32_t kMult1 = 0xCD9E8D57u;

inline void round_once(std::array<uint32_t, 4>& x, const std::array<uint32_t, 2>& k) {
    const uint64_t p0 = static_cast<uint64_t>(kMult0) * x[0];
    const uint64_t p1 = static_cast<uint64_t>(kMult1) * x[2];
    const uint32_t lo0 = static_cast<uint32_t>(p0), hi0 = static_cast<uint32_t>(p0 >> 32);
    const uint32_t lo1 = static_cast<uint32_t>(p1), hi1 = static_cast<uint32_t>(p1 >> 32);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

inline std::array<uint32_t, 4> block(uint64_t seed, uint64_t stream, uint64_t index) {
    std::array<uint32_t, 4> x = {
        static_cast<uint32_t>(index), static_cast<uint32_t>(index >> 32),
        static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
    std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed),
                                   static_cast<uint32_t>(seed >> 32)};
    for (int r = 0; r < 10; ++r) {
        round_once(x, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return x;
}

}  // namespace philox

// Two independent 64-bit words from one block.
inline std::array<uint64_t, 2> random_u64x2(uint64_t seed, uint64_t stream, uint64_t index) {
    const auto b = philox::block(seed, stream, index);
    return {(static_cast<uint64_t>(b[1]) << 32) | b[0],
            (static_cast<uint64_t>(b[3]) << 32) | b[2]};
}

// Uniform in (0,1]: never returns 0, safe under log().
inline double uniform_open0(uint64_t x) {
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

// Uniform in [0,1).
inline double uniform_half_open(uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Standard complex Gaussian with E c = 0, E c conj(c) = 1, E c^2 = 0
// (real and imaginary parts independent N(0, 1/2)).  |c|^2 is Exp(1),
// the phase is uniform; one counter block per draw.
inline std::complex<double> complex_gaussian(uint64_t seed, uint64_t stream, uint64_t index) {
    const auto u = random_u64x2(seed, stream, index);
    const double radius = std::sqrt(-std::log(uniform_open0(u[0])));
    const double phase = 6.283185307179586476925287 * uniform_half_open(u[1]);
    return {radius * std::cos(phase), radius * std::sin(phase)};
}

// Sequential view of a (seed, stream) substream, for draws whose count is
// data-dependent (e.g. Poisson sampling).
class RandomStream {
  public:
    RandomStream(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

    double next_uniform_open0() { return uniform_open0(next_word()); }
    double next_uniform_half_open() { return uniform_half_open(next_word()); }

    // Knuth product method; fine for the moderate means used here.
    uint64_t next_poisson(double mean) {
        const double limit = std::exp(-mean);
        uint64_t k = 0;
        double p = 1.0;
        do {
            p *= next_uniform_open0();
            if (p <= limit) return k;
            ++k;
        } while (k < 100000000);
        return k;
    }

  private:
    uint64_t next_word() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const auto u = random_u64x2(seed_, stream_, index_++);
        spare_ = u[1];
        have_spare_ = true;
        return u[0];
    }

    uint64_t seed_;
    uint64_t stream_;
    uint64_t index_ = 0;
    uint64_t spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace zerocorr
