#include "relsim/transition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relsim/montecarlo.hpp"
#include "relsim/quadrature.hpp"

namespace relsim {

double prob_no_jump(const IntensityModel& model, const State& z, double delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("prob_no_jump: delta must be >= 0");
    return std::exp(-integrated_hazard(model, z, delta));
}

double prob_some_jump(const IntensityModel& model, const State& z, double delta) {
    return 1.0 - prob_no_jump(model, z, delta);
}

double prob_single_jump_window(const IntensityModel& model, const State& z0,
                               const WindowSpec& w) {
    if (!(0.0 <= w.s1 && w.s1 < w.t1 && w.t1 <= w.t))
        throw std::invalid_argument("prob_single_jump_window: need 0 <= s1 < t1 <= t");
    auto integrand = [&](double r) {
        const State pre = flow(z0, r);
        const auto rates = model.evaluate(pre);
        const double comp_rate =
            w.component == Component::first ? rates.lambda : rates.mu;
        const State post = apply_jump(pre, w.component);
        return std::exp(-integrated_hazard(model, z0, r)) * comp_rate *
               std::exp(-integrated_hazard(model, post, w.t - r));
    };
    const auto breaks = model.breakpoints(z0, w.t1);
    const double p = integrate_piecewise(integrand, w.s1, w.t1, breaks, 1e-8);
    if (!(p >= -1e-8 && p <= 1.0 + 1e-8))
        throw std::runtime_error("prob_single_jump_window: quadrature out of [0,1]");
    return std::clamp(p, 0.0, 1.0);
}

IdentityReport validate_identities(const IntensityModel& model, const State& z,
                                   const std::vector<double>& deltas, long reps,
                                   std::uint64_t seed, SampleMethod method) {
    if (reps < 10'000)
        throw std::invalid_argument("validate_identities: reps must be >= 1e4");
    IdentityReport report;
    const double max_delta = *std::max_element(deltas.begin(), deltas.end());

    // One first-event sample per replication serves every delta row.
    auto waits = run_replications(reps, seed, Execution::parallel,
                                  [&](long, RngStream& rng) {
                                      (void)max_delta;
                                      return sample_event(model, z, rng, method).wait;
                                  });

    for (double delta : deltas) {
        const double p = prob_no_jump(model, z, delta);
        long hits = 0;
        for (double wv : waits)
            if (wv > delta) ++hits;
        const double freq = static_cast<double>(hits) / static_cast<double>(reps);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
        const double zscore = se > 0.0 ? (freq - p) / se : 0.0;
        report.rows.push_back({delta, p, freq, se, zscore});
        report.max_abs_z = std::max(report.max_abs_z, std::abs(zscore));
    }
    report.pass = report.max_abs_z <= 4.0;
    return report;
}

}  // namespace relsim
