#pragma once

#include <functional>
#include <vector>

#include "relsim/intensity.hpp"
#include "relsim/state.hpp"

namespace relsim {

// Semi-norm (1+x+y)^m and its time-weighted variant (1+t)^k (1+x+y)^m.
double v(double m, const State& z);
double v_tk(double k, double m, double t, const State& z);

// Closed-form generator applied to v(m, .): jump terms plus the transport
// term 2m(1+x+y)^{m-1}.
double generator_on_v(const IntensityModel& model, double m, const State& z);

// Generic test function: value everywhere (including at post-jump states)
// plus both partial derivatives.
struct TestFunction {
    std::function<double(const State&)> value;
    std::function<double(const State&)> dx;
    std::function<double(const State&)> dy;
};

TestFunction make_v_function(double m);

double generator_apply(const IntensityModel& model, const TestFunction& h,
                       const State& z);

// Concrete sublevel threshold delta^{-m}: outside {v(m,.) <= delta^{-m}}
// the sum x/(1+x) + y/(1+y) is at least 1-delta, which is what the drift
// inequality needs.
double k_of_delta(double delta, double m);

struct DriftParams {
    double gamma;
    double delta;
    double epsilon = 0.0;
    double m = 1.0;
    double m0 = 1.0;
    double k = 0.0;
};

struct DriftViolation {
    State state;
    double lv;      // generator value
    double bound;   // required upper bound
    double margin;  // lv - bound (positive = violation)
};

struct DriftReport {
    std::vector<DriftViolation> violations;
    long checked = 0;
    bool pass() const { return violations.empty(); }
};

// Check L v_m <= -((1-delta)*gamma - 2m) * v_{m-1} on every grid state;
// all grid states must lie outside the sublevel set {v(m,.) <= K(delta)}.
DriftReport drift_check(const IntensityModel& model, const DriftParams& params,
                        const std::vector<State>& grid,
                        double rel_tol = 1e-9);

// Log-spaced grid of about n_target states outside {v(m,.) <= K}.
std::vector<State> make_drift_grid(double K, double m, long n_target);

// Explicit hitting-moment constant
//   C(k,K) = (k+1)/((1-d)g - 2m - e) * (1 + e^{-(m0-m)} k^{1+m0-m}/(m0-m-k)).
double constant_C(double k, double K, double m, double m0, double gamma,
                  double delta, double epsilon);

// Series constant for the two-threshold bound, evaluated with relative
// tail bound 1e-9 via the geometric envelope (1-q)^{(l-1)/p2}.
double constant_C_tilde(double k, double k1, double K, double q, double m,
                        double m0, double gamma, double delta, double epsilon);

}  // namespace relsim
