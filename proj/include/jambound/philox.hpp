// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace jambound {

namespace detail {

// philox4x32-10 keyed counter permutation. Stateless: the whole stream
// is addressed by (key, counter), which is what makes per-trial
// sub-streams cheap and schedule-independent.
struct Philox4x32 {
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int i = 0; i < 10; ++i) {
            if (i > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
            const std::uint32_t hi0 = std::uint32_t(p0 >> 32);
            const std::uint32_t lo0 = std::uint32_t(p0);
            const std::uint32_t hi1 = std::uint32_t(p1 >> 32);
            const std::uint32_t lo1 = std::uint32_t(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

// Bit-mixing step used to hash sub-stream indices into fresh stream ids.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

// Deterministic random source addressed by (seed, stream). Copyable
// value type; next_* calls advance only the local copy. Identical
// (seed, stream) always reproduces the identical sequence, regardless
// of platform or thread count. Sub-streams derived via substream(i)
// use disjoint counter blocks with overwhelming probability (64-bit
// hashed stream ids), so concurrent trials can each own one.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    // Child generator for trial/start/entry index i. Pure: does not
    // advance this generator, so repeated calls agree.
    SeededRng substream(std::uint64_t index) const {
        const std::uint64_t child =
            detail::splitmix64(stream_ + detail::splitmix64(index + 1));
        return SeededRng(seed_, child);
    }

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // One standard normal via Box-Muller. Consumes one whole counter
    // block so the mapping from counters to outputs stays simple.
    double next_gaussian() {
        align_block();
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();        // [0, 1)
        const double rad = std::sqrt(-2.0 * std::log(u1));
        return rad * std::cos(6.283185307179586 * u2);
    }

    // Circularly-symmetric complex normal with E|z|^2 = variance;
    // real and imaginary parts are the two Box-Muller outputs of one
    // counter block, each N(0, variance/2).
    std::complex<double> next_complex_gaussian(double variance) {
        align_block();
        const double u1 = 1.0 - next_double();
        const double u2 = next_double();
        const double rad = std::sqrt(-std::log(u1) * variance);
        const double ang = 6.283185307179586 * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

  private:
    void refill() {
        const std::array<std::uint32_t, 4> ctr = {
            std::uint32_t(block_), std::uint32_t(block_ >> 32),
            std::uint32_t(stream_), std::uint32_t(stream_ >> 32)};
        const std::array<std::uint32_t, 2> key = {std::uint32_t(seed_),
                                                  std::uint32_t(seed_ >> 32)};
        buf_ = detail::Philox4x32::block(ctr, key);
        ++block_;
        pos_ = 0;
    }

    // Discard the tail of a partially consumed block.
    void align_block() {
        if (pos_ != 0 && pos_ != 4) pos_ = 4;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

}  // namespace jambound
