#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "relsim/intensity.hpp"
#include "relsim/rng.hpp"
#include "relsim/state.hpp"

namespace relsim {

enum class SampleMethod { inversion, thinning };

const char* to_string(SampleMethod m);

struct JumpRecord {
    double time;  // absolute time of the jump
    Component component;
    State state_before;  // left limit at the jump instant
    State state_after;
};

struct Path {
    State initial;
    std::vector<JumpRecord> jumps;
    double horizon = 0.0;
    std::uint64_t rng_seed = 0;
    std::uint64_t stream_index = 0;
    SampleMethod method = SampleMethod::thinning;

    // State at absolute time t (right-continuous).
    State at(double t) const;
};

// Integral of Lambda along the deterministic flow from z over [0,t],
// piecewise adaptive Simpson between declared breakpoints, abs tol 1e-10.
double integrated_hazard(const IntensityModel& model, const State& z, double t);

// Unique T with integrated_hazard(z,T) = e; e > 0.
double invert_hazard(const IntensityModel& model, const State& z, double e);

struct Event {
    double wait;  // time until the jump, relative to the current state
    Component component;
};

// First-jump time by inverting the cumulative hazard at a standard
// exponential, component by a lambda/Lambda coin at the jump state.
Event sample_event_inversion(const IntensityModel& model, const State& z,
                             RngStream& rng);

// Exact thinning against the dominating constant rate 2*Gamma.  Needs only
// pointwise evaluation, so it stays exact across discontinuities.
Event sample_event_thinning(const IntensityModel& model, const State& z,
                            RngStream& rng);

Event sample_event(const IntensityModel& model, const State& z, RngStream& rng,
                   SampleMethod method);

// Simulate until the next event would exceed the horizon.  Deterministic
// given (model, z0, horizon, seed, stream_index, method).
Path simulate_path(const IntensityModel& model, const State& z0, double horizon,
                   std::uint64_t seed, std::uint64_t stream_index,
                   SampleMethod method);

// CSV export per the documented column layout.
void write_path_csv(std::ostream& os, const Path& path);

}  // namespace relsim
