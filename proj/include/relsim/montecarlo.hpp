#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relsim/rng.hpp"

namespace relsim {

enum class Execution { serial, parallel };

// Run n replications, each on its own derived RNG stream, storing the
// result at its replication index.  The serial and OpenMP paths produce
// bit-identical output vectors; the serial path is the reference the
// parallel kernel is tested against.
template <class Fn>
std::vector<double> run_replications(long n, std::uint64_t seed, Execution exec,
                                     Fn&& fn) {
    std::vector<double> out(static_cast<std::size_t>(n));
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long r = 0; r < n; ++r) {
            RngStream rng(seed, static_cast<std::uint64_t>(r));
            out[static_cast<std::size_t>(r)] = fn(r, rng);
        }
    } else {
        for (long r = 0; r < n; ++r) {
            RngStream rng(seed, static_cast<std::uint64_t>(r));
            out[static_cast<std::size_t>(r)] = fn(r, rng);
        }
    }
    return out;
}

// Order-independent pairwise summation.
double pairwise_sum(std::span<const double> v);

struct SampleStats {
    long n = 0;
    double mean = 0.0;
    double std_err = 0.0;
    double max = 0.0;
};

SampleStats summarize(std::span<const double> v);

// 99% two-sided normal quantile.
inline constexpr double z99 = 2.5758293035489004;

// One-sided 99% lower confidence bound for a binomial proportion
// (Wilson score interval).
double binomial_lower_bound99(long successes, long trials);

}  // namespace relsim
