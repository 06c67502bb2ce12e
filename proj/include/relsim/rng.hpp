#pragma once

#include <cmath>
#include <cstdint>

namespace relsim {

// Reproducible per-replication random stream.
//
// Generator: xoshiro256++ seeded by splitmix64.  Stream derivation mixes
// (master seed, stream index) through the splitmix64 avalanche before
// filling the state, so streams for distinct indices are statistically
// independent and every (seed, index) pair reproduces the same sequence
// on any platform.  Algorithm version: 1 (frozen; changing it changes
// every published number).
class RngStream {
  public:
    static constexpr int algorithm_version = 1;

    RngStream(std::uint64_t seed, std::uint64_t stream_index = 0) {
        std::uint64_t u = seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1));
        for (auto& w : s_) w = splitmix64(u);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard exponential; strictly positive.
    double exponential() { return -std::log1p(-uniform()); }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    static std::uint64_t splitmix64(std::uint64_t& state) {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace relsim
