#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relsim/lyapunov.hpp"
#include "relsim/montecarlo.hpp"
#include "relsim/sampler.hpp"

namespace relsim {

enum class Verdict { consistent, violated, inconclusive };

const char* to_string(Verdict v);

struct EstimateReport {
    std::string quantity;
    long n = 0;
    double point = 0.0;
    double std_err = 0.0;
    double ci_low = 0.0;   // 99% normal-approximation bounds
    double ci_high = 0.0;
    std::optional<double> bound;  // theorem value compared against
    Verdict verdict = Verdict::consistent;
    std::uint64_t seed = 0;
    long excluded = 0;      // capped replications, never silently dropped
    double max_over_mean = 0.0;  // heavy-tail diagnostic
};

struct HittingSample {
    double tau = 0.0;
    bool capped = false;
};

// Simulate from z0 until v(m, Z_t) <= K; tau is 0 or a jump instant since
// v only decreases at jumps.
HittingSample hitting_time(const IntensityModel& model, const State& z0, double K,
                           double m, RngStream& rng, double time_cap,
                           SampleMethod method = SampleMethod::thinning);

struct MomentOptions {
    double time_cap = 1e6;
    SampleMethod method = SampleMethod::thinning;
    Execution exec = Execution::parallel;
};

// Mean of tau^p over replications, with CI, heavy-tail diagnostic and
// capped-replication accounting.
EstimateReport estimate_tau_moment(const IntensityModel& model, const State& z0,
                                   double K, double m, double p, long reps,
                                   std::uint64_t seed,
                                   const MomentOptions& opt = {});

struct TheoremParams {
    double K = 0.0;
    double K1 = 0.0;
    double m = 0.0;   // intermediate power for parts 2/3
    double m0 = 1.0;
    double k = 0.0;
    double k1 = 0.0;
    double delta = 0.2;
    double epsilon = 0.0;
    long q_reps = 10'000;  // per grid point, part 3
    int q_grid = 5;
};

// Monte-Carlo left-hand side vs the theorem's explicit right-hand side.
EstimateReport check_theorem_bound(int part, const IntensityModel& model,
                                   const TheoremParams& params, const State& z0,
                                   long reps, std::uint64_t seed,
                                   const MomentOptions& opt = {});

// Mean of h(Z_t) - h(Z_0) - int_0^t Lh(Z_s) ds over paths; zero in law.
EstimateReport dynkin_residual(const IntensityModel& model, const TestFunction& h,
                               const State& z0, double t, long reps,
                               std::uint64_t seed,
                               const MomentOptions& opt = {});

struct OccupationReport {
    double horizon = 0.0, burn_in = 0.0;
    double regime_fraction[2][2] = {{0, 0}, {0, 0}};  // [i][j]
    std::vector<double> grid;    // elapsed-time grid
    std::vector<double> x_cdf;   // time-weighted occupation CDFs
    std::vector<double> y_cdf;
    double frac_i0 = 0.0, frac_j0 = 0.0;

    // sup over the grid of |cdf - F| for F(g) = 1 - exp(-rate*g)
    double ks_to_exponential_x(double rate) const;
    double ks_to_exponential_y(double rate) const;
};

OccupationReport stationary_occupation(const IntensityModel& model, const State& z0,
                                       double horizon, double burn_in, int bins,
                                       std::uint64_t seed,
                                       SampleMethod method = SampleMethod::thinning,
                                       double grid_max = 15.0);

struct RegenerationRecord {
    std::vector<double> tau_n;    // returns to K-sublevel set
    std::vector<double> T_n;      // capped exits
    std::vector<double> delta_n;  // tau_n - T_{n-1}
    std::vector<State> state_at_T;
    std::optional<double> tau_K1;  // first hit of the smaller set, if seen
};

RegenerationRecord regeneration_sequence(const IntensityModel& model, const State& z0,
                                         double K, double K1, double m, int n_cycles,
                                         RngStream& rng,
                                         SampleMethod method = SampleMethod::thinning,
                                         double time_cap = 1e6);

struct QEstimate {
    double q_low = 0.0;      // min over grid of one-sided 99% lower bounds
    double min_freq = 0.0;   // raw minimum frequency
    long grid_points = 0;
    long reps_per_point = 0;
};

// Lower confidence bound for the uniform return probability q: covering
// grid of the (K+1)-sublevel set, one time unit per replication, hit
// frequency of the K1-sublevel set.
QEstimate estimate_q(const IntensityModel& model, double K, double K1, double m,
                     long reps_per_point, int grid_n, std::uint64_t seed,
                     SampleMethod method = SampleMethod::thinning,
                     Execution exec = Execution::parallel);

struct ExcursionReport {
    std::vector<double> freq;     // P(tau(K1) not reached within l cycles), l=1..L
    std::vector<double> std_err;
    long reps = 0;
    double eta_indicator_corr = 0.0;  // diagnostic only, nothing asserted
};

ExcursionReport estimate_excursion_survival(const IntensityModel& model,
                                            const State& z0, double K, double K1,
                                            double m, int max_cycles, long reps,
                                            std::uint64_t seed,
                                            SampleMethod method = SampleMethod::thinning,
                                            Execution exec = Execution::parallel);

}  // namespace relsim
