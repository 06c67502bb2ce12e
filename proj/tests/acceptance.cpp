// End-to-end acceptance suite: ten independent checks, one verdict line
// each.  Exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "relsim/config.hpp"
#include "relsim/lyapunov.hpp"
#include "relsim/montecarlo.hpp"
#include "relsim/recurrence.hpp"
#include "relsim/transition.hpp"

using namespace relsim;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point t0;

void begin() { t0 = std::chrono::steady_clock::now(); }

void verdict(int id, const std::string& name, bool pass, const std::string& detail) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %-28s %s (%.1f s)\n", pass ? "PASS" : "FAIL",
                id, name.c_str(), detail.c_str(), secs);
    if (!pass) ++failures;
}

IntensityModel equality_family(double g) {
    return {reciprocal_family(0.0, g), reciprocal_family(0.0, g), g, g};
}

std::string fmt(const char* f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib])
            ++ia;
        else
            ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / a.size() -
                                 static_cast<double>(ib) / b.size()));
    }
    return d;
}

// 1. Analytic no-jump probability 2^-6 vs Monte-Carlo frequency.
void criterion_no_jump_identity() {
    begin();
    const auto model = equality_family(3.0);
    const State z0{0, 0, 0, 0};
    const double p = 1.0 / 64.0;
    const double p_quad = prob_no_jump(model, z0, 1.0);

    const long n = 1'000'000;
    const auto hits =
        run_replications(n, 1001, Execution::parallel, [&](long, RngStream& rng) {
            return sample_event_thinning(model, z0, rng).wait > 1.0 ? 1.0 : 0.0;
        });
    const double freq = pairwise_sum(hits) / static_cast<double>(n);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    const bool pass =
        std::abs(p_quad - p) <= 1e-8 && std::abs(freq - p) <= 4.0 * sigma;
    verdict(1, "no-jump identity", pass,
            fmt("freq=%.6f analytic=%.6f", freq, p));
}

// 2. Inversion and thinning first-jump laws agree (KS at alpha=0.001).
void criterion_sampler_equivalence() {
    begin();
    const auto model = equality_family(3.0);
    const State z0{0, 0, 0, 0};
    const long n = 100'000;
    std::vector<double> inv(n), thin(n);
    std::vector<double> inv_first(n), thin_first(n);
    const auto draw = [&](SampleMethod method, std::vector<double>& waits,
                          std::vector<double>& firsts, std::uint64_t seed) {
        auto out =
            run_replications(n, seed, Execution::parallel, [&](long r, RngStream& rng) {
                const Event ev = sample_event(model, z0, rng, method);
                firsts[static_cast<std::size_t>(r)] =
                    ev.component == Component::first ? 1.0 : 0.0;
                return ev.wait;
            });
        waits = std::move(out);
    };
    draw(SampleMethod::inversion, inv, inv_first, 2001);
    draw(SampleMethod::thinning, thin, thin_first, 2002);

    const double d = ks_two_sample(inv, thin);
    const double ks_crit = 1.9495 * std::sqrt(2.0 / static_cast<double>(n));
    const double f1 = pairwise_sum(inv_first) / static_cast<double>(n);
    const double f2 = pairwise_sum(thin_first) / static_cast<double>(n);
    const double comp_tol = 3.0 * std::sqrt(0.5 / static_cast<double>(n));
    const bool pass = d < ks_crit && std::abs(f1 - f2) < comp_tol;
    verdict(2, "sampler equivalence", pass, fmt("KS=%.5f crit=%.5f", d, ks_crit));
}

// 3. Drift inequality outside the sublevel set, m in {1,2}, zero violations.
void criterion_drift_certificate() {
    begin();
    const auto model = equality_family(6.0);
    bool pass = true;
    long checked = 0;
    for (double m : {1.0, 2.0}) {
        DriftParams params;
        params.gamma = 6.0;
        params.delta = 0.2;
        params.m = m;
        const auto grid = make_drift_grid(k_of_delta(0.2, m), m, 10'000);
        const auto rep = drift_check(model, params, grid);
        pass = pass && rep.pass();
        checked += rep.checked;
    }
    verdict(3, "drift certificate", pass,
            fmt("checked=%.0f violations=%.0f", static_cast<double>(checked),
                pass ? 0.0 : 1.0));
}

// 4-6. Theorem hitting-moment bounds, parts 1 to 3.
void criterion_theorem(int part) {
    begin();
    const auto model = equality_family(6.0);
    const State z0{0, 20.0, 0, 20.0};
    TheoremParams params;
    params.K = 5.0;
    params.K1 = 2.0;
    params.delta = 0.2;
    if (part == 1) {
        params.m0 = 1.0;
    } else {
        params.k = part == 2 ? 0.5 : 0.2;
        params.k1 = 0.5;
        params.m = 1.75;
        params.m0 = 2.5;
        params.epsilon = 1.0;
    }
    const auto rep =
        check_theorem_bound(part, model, params, z0, 10'000, 3000 + part);
    const bool pass = rep.verdict == Verdict::consistent && rep.bound &&
                      rep.ci_high <= *rep.bound;
    static const char* names[] = {"", "hitting mean bound", "hitting moment bound",
                                  "two-threshold bound"};
    verdict(3 + part, names[part], pass,
            fmt("ci_high=%.3f bound=%.3f", rep.ci_high, rep.bound.value_or(-1.0)));
}

// 7. Dynkin residual is statistically zero for two test functions.
void criterion_dynkin() {
    begin();
    const auto model = equality_family(3.0);
    const State z0{0, 0, 0, 0};
    bool pass = true;
    double worst = 0.0;
    for (double power : {1.0, 2.0}) {
        const auto rep = dynkin_residual(model, make_v_function(power), z0, 2.0,
                                         100'000, 4000 + static_cast<int>(power));
        pass = pass && rep.verdict == Verdict::consistent;
        if (rep.std_err > 0.0)
            worst = std::max(worst, std::abs(rep.point) / rep.std_err);
    }
    verdict(7, "Dynkin residual", pass, fmt("max|z|=%.2f limit=%.0f", worst, 4.0));
}

// 8. Long-run occupation of the constant model matches the renewal oracle.
void criterion_stationary() {
    begin();
    const IntensityModel model(constant_family(1.0), constant_family(1.0), 1.0, 1.0);
    const auto rep =
        stationary_occupation(model, {0, 0, 0, 0}, 100'100.0, 100.0, 1000, 5001);
    const double ks = rep.ks_to_exponential_x(1.0);
    const bool pass = ks < 0.01 && std::abs(rep.frac_i0 - 0.5) <= 0.005;
    verdict(8, "stationary occupation", pass,
            fmt("KS=%.4f frac_i0=%.4f", ks, rep.frac_i0));
}

// 9. Single-jump window probability: quadrature vs closed form vs simulation.
void criterion_single_jump_window() {
    begin();
    const WindowSpec w{0.0, 1.0, 1.0, Component::first};
    const long n = 1'000'000;

    const auto run_case = [&](const IntensityModel& model, double* quad_out,
                              std::uint64_t seed) {
        const State z0{0, 0, 0, 0};
        const double p = prob_single_jump_window(model, z0, w);
        *quad_out = p;
        const auto hits =
            run_replications(n, seed, Execution::parallel, [&](long, RngStream& rng) {
                const Event first = sample_event_thinning(model, z0, rng);
                if (first.wait >= 1.0 || first.component != Component::first)
                    return 0.0;
                const State after = apply_jump(flow(z0, first.wait), first.component);
                const Event second = sample_event_thinning(model, after, rng);
                return first.wait + second.wait > 1.0 ? 1.0 : 0.0;
            });
        const double freq = pairwise_sum(hits) / static_cast<double>(n);
        const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        return std::abs(freq - p) <= 4.0 * sigma;
    };

    double p_const = 0.0, p_recip = 0.0;
    const IntensityModel constant(constant_family(1.0), constant_family(1.0), 1.0, 1.0);
    const bool ok_const = run_case(constant, &p_const, 6001) &&
                          std::abs(p_const - std::exp(-2.0)) <= 1e-6;
    const bool ok_recip = run_case(equality_family(3.0), &p_recip, 6002);
    verdict(9, "single-jump window", ok_const && ok_recip,
            fmt("p_const=%.6f p_recip=%.6f", p_const, p_recip));
}

// 10. Regeneration structure: excursion survival under the geometric bound,
// exits inside the enlarged sublevel set, cycle lengths capped at one.
void criterion_regeneration() {
    begin();
    const auto model = equality_family(6.0);
    const State z0{0, 20.0, 0, 20.0};
    const double K = 5.0, K1 = 2.0, m = 1.0;

    const QEstimate q = estimate_q(model, K, K1, m, 10'000, 5, 7001);
    const int cycles = 5;
    const auto ex =
        estimate_excursion_survival(model, z0, K, K1, m, cycles, 2000, 7002);
    bool pass = q.q_low > 0.0;
    for (int l = 0; l < cycles; ++l) {
        const double bound = std::pow(1.0 - q.q_low, l + 1) + 4.0 * ex.std_err[l];
        pass = pass && ex.freq[static_cast<std::size_t>(l)] <= bound;
    }

    for (long r = 0; r < 200 && pass; ++r) {
        RngStream rng(7003, static_cast<std::uint64_t>(r));
        const auto rec = regeneration_sequence(model, z0, K, K1, m, cycles, rng);
        for (std::size_t c = 0; c < rec.T_n.size(); ++c) {
            pass = pass && v(m, rec.state_at_T[c]) <= K + 1.0 + 1e-9;
            pass = pass && rec.T_n[c] - rec.tau_n[c] <= 1.0 + 1e-12;
        }
    }
    verdict(10, "regeneration structure", pass,
            fmt("q_low=%.3f survival_1=%.3f", q.q_low,
                ex.freq.empty() ? -1.0 : ex.freq[0]));
}

}  // namespace

int main() {
    criterion_no_jump_identity();
    criterion_sampler_equivalence();
    criterion_drift_certificate();
    criterion_theorem(1);
    criterion_theorem(2);
    criterion_theorem(3);
    criterion_dynkin();
    criterion_stationary();
    criterion_single_jump_window();
    criterion_regeneration();
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
