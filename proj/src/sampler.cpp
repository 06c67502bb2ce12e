#include "relsim/sampler.hpp"

#include <ostream>
#include <stdexcept>

#include "relsim/quadrature.hpp"

namespace relsim {

const char* to_string(SampleMethod m) {
    return m == SampleMethod::inversion ? "inversion" : "thinning";
}

State Path::at(double t) const {
    if (t < 0.0 || t > horizon) throw std::invalid_argument("Path::at: t outside [0,horizon]");
    State z = initial;
    double t0 = 0.0;
    for (const JumpRecord& j : jumps) {
        if (j.time > t) break;
        z = j.state_after;
        t0 = j.time;
    }
    return flow(z, t - t0);
}

double integrated_hazard(const IntensityModel& model, const State& z, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("integrated_hazard: t must be >= 0");
    if (t == 0.0) return 0.0;
    const auto breaks = model.breakpoints(z, t);
    auto f = [&](double s) { return model.evaluate(flow(z, s)).Lambda; };
    return integrate_piecewise(f, 0.0, t, breaks, 1e-10);
}

double invert_hazard(const IntensityModel& model, const State& z, double e) {
    if (!(e > 0.0)) throw std::invalid_argument("invert_hazard: e must be > 0");
    auto g = [&](double t) { return integrated_hazard(model, z, t); };
    return solve_increasing(g, e, 1e-10);
}

namespace {

Component pick_component(const IntensityModel& model, const State& pre, RngStream& rng) {
    const auto r = model.evaluate(pre);
    return rng.uniform() < r.lambda / r.Lambda ? Component::first : Component::second;
}

}  // namespace

Event sample_event_inversion(const IntensityModel& model, const State& z,
                             RngStream& rng) {
    const double wait = invert_hazard(model, z, rng.exponential());
    return {wait, pick_component(model, flow(z, wait), rng)};
}

Event sample_event_thinning(const IntensityModel& model, const State& z,
                            RngStream& rng) {
    const double dominating = 2.0 * model.Gamma();
    double s = 0.0;
    for (long iter = 0; iter < 100'000'000; ++iter) {
        s += rng.exponential() / dominating;
        const State cand = flow(z, s);
        const auto r = model.evaluate(cand);
        if (rng.uniform() < r.Lambda / dominating)
            return {s, rng.uniform() < r.lambda / r.Lambda ? Component::first
                                                          : Component::second};
    }
    throw std::runtime_error("sample_event_thinning: no acceptance after 1e8 proposals");
}

Event sample_event(const IntensityModel& model, const State& z, RngStream& rng,
                   SampleMethod method) {
    return method == SampleMethod::inversion ? sample_event_inversion(model, z, rng)
                                             : sample_event_thinning(model, z, rng);
}

Path simulate_path(const IntensityModel& model, const State& z0, double horizon,
                   std::uint64_t seed, std::uint64_t stream_index,
                   SampleMethod method) {
    if (!(horizon > 0.0)) throw std::invalid_argument("simulate_path: horizon must be > 0");
    Path path;
    path.initial = z0;
    path.horizon = horizon;
    path.rng_seed = seed;
    path.stream_index = stream_index;
    path.method = method;

    RngStream rng(seed, stream_index);
    State z = z0;
    double t = 0.0;
    while (true) {
        if (path.jumps.size() > 100'000'000)
            throw std::runtime_error(
                "simulate_path: more than 1e8 events; model or horizon is broken");
        const Event ev = sample_event(model, z, rng, method);
        t += ev.wait;
        if (t > horizon) break;
        const State pre = flow(z, ev.wait);
        const State post = apply_jump(pre, ev.component);
        path.jumps.push_back({t, ev.component, pre, post});
        z = post;
    }
    return path;
}

void write_path_csv(std::ostream& os, const Path& path) {
    os << "event_index,time,component,i_before,x_before,j_before,y_before,"
          "i_after,x_after,j_after,y_after\n";
    std::size_t k = 0;
    for (const JumpRecord& j : path.jumps) {
        const State& b = j.state_before;
        const State& a = j.state_after;
        os << k++ << ',' << j.time << ',' << static_cast<int>(j.component) << ','
           << b.i << ',' << b.x << ',' << b.j << ',' << b.y << ',' << a.i << ','
           << a.x << ',' << a.j << ',' << a.y << '\n';
    }
}

}  // namespace relsim
