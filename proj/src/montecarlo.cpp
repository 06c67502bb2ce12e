#include "relsim/montecarlo.hpp"

#include <cmath>

namespace relsim {

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

SampleStats summarize(std::span<const double> v) {
    SampleStats s;
    s.n = static_cast<long>(v.size());
    if (s.n == 0) return s;
    s.mean = pairwise_sum(v) / static_cast<double>(s.n);
    double ss = 0.0;
    s.max = v[0];
    for (double x : v) {
        const double d = x - s.mean;
        ss += d * d;
        if (x > s.max) s.max = x;
    }
    if (s.n > 1)
        s.std_err = std::sqrt(ss / (static_cast<double>(s.n) *
                                    static_cast<double>(s.n - 1)));
    return s;
}

double binomial_lower_bound99(long successes, long trials) {
    // One-sided 99% Wilson lower bound.
    constexpr double z = 2.3263478740408408;  // Phi^{-1}(0.99)
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = p + z2 / (2.0 * n);
    const double rad = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    const double lo = (center - rad) / denom;
    return lo > 0.0 ? lo : 0.0;
}

}  // namespace relsim
