#pragma once

#include <cstdint>
#include <vector>

#include "relsim/sampler.hpp"

namespace relsim {

// Designated single-jump window inside a horizon: exactly one jump of the
// given component in (s1,t1) and no other jump anywhere in [0,t].
struct WindowSpec {
    double s1, t1, t;
    Component component = Component::first;
};

// P(no jumps on [0,delta]) from z: exp of minus the cumulative hazard.
double prob_no_jump(const IntensityModel& model, const State& z, double delta);

// Complement of the above.
double prob_some_jump(const IntensityModel& model, const State& z, double delta);

// Quadrature over the jump instant r in (s1,t1): survive to r along the
// unjumped flow, jump with the component intensity, survive from the
// post-jump state to t.
double prob_single_jump_window(const IntensityModel& model, const State& z0,
                               const WindowSpec& w);

struct IdentityRow {
    double delta;
    double analytic;
    double empirical;
    double std_err;
    double z_score;
};

struct IdentityReport {
    std::vector<IdentityRow> rows;
    double max_abs_z = 0.0;
    bool pass = false;  // all |z| within 4 sigma
};

// Empirical no-jump frequency vs prob_no_jump on a grid of deltas.
IdentityReport validate_identities(const IntensityModel& model, const State& z,
                                   const std::vector<double>& deltas, long reps,
                                   std::uint64_t seed,
                                   SampleMethod method = SampleMethod::thinning);

}  // namespace relsim
