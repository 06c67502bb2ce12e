#include "relsim/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relsim/quadrature.hpp"

namespace relsim {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

HittingSample hitting_time(const IntensityModel& model, const State& z0, double K,
                           double m, RngStream& rng, double time_cap,
                           SampleMethod method) {
    if (!(K > 0.0)) throw std::invalid_argument("hitting_time: K must be > 0");
    if (!(time_cap > 0.0)) throw std::invalid_argument("hitting_time: time_cap must be > 0");
    if (v(m, z0) <= K) return {0.0, false};
    State z = z0;
    double t = 0.0;
    while (true) {
        const Event ev = sample_event(model, z, rng, method);
        t += ev.wait;
        if (t > time_cap) return {t, true};
        z = apply_jump(flow(z, ev.wait), ev.component);
        if (v(m, z) <= K) return {t, false};
    }
}

namespace {

void apply_verdict(EstimateReport& r) {
    r.ci_low = r.point - z99 * r.std_err;
    r.ci_high = r.point + z99 * r.std_err;
    const long total = r.n + r.excluded;
    if (r.excluded > 0 &&
        static_cast<double>(r.excluded) >= 1e-4 * static_cast<double>(total)) {
        r.verdict = Verdict::inconclusive;
        return;
    }
    if (r.max_over_mean > 50.0) {
        r.verdict = Verdict::inconclusive;
        return;
    }
    if (r.bound && r.ci_low > *r.bound)
        r.verdict = Verdict::violated;
    else
        r.verdict = Verdict::consistent;
}

}  // namespace

EstimateReport estimate_tau_moment(const IntensityModel& model, const State& z0,
                                   double K, double m, double p, long reps,
                                   std::uint64_t seed, const MomentOptions& opt) {
    if (reps < 100) throw std::invalid_argument("estimate_tau_moment: reps must be >= 100");
    auto raw = run_replications(reps, seed, opt.exec, [&](long, RngStream& rng) {
        const HittingSample h = hitting_time(model, z0, K, m, rng, opt.time_cap,
                                             opt.method);
        return h.capped ? std::nan("") : std::pow(h.tau, p);
    });
    std::vector<double> kept;
    kept.reserve(raw.size());
    long excluded = 0;
    for (double x : raw) {
        if (std::isnan(x))
            ++excluded;
        else
            kept.push_back(x);
    }

    const SampleStats s = summarize(kept);
    EstimateReport r;
    r.quantity = "E[tau^" + std::to_string(p) + "]";
    r.n = s.n;
    r.point = s.mean;
    r.std_err = s.std_err;
    r.seed = seed;
    r.excluded = excluded;
    r.max_over_mean = s.mean > 0.0 ? s.max / s.mean : 0.0;
    apply_verdict(r);
    return r;
}

namespace {

[[noreturn]] void hypothesis_fail(const std::string& what) {
    throw std::invalid_argument("check_theorem_bound: " + what + " fails");
}

}  // namespace

EstimateReport check_theorem_bound(int part, const IntensityModel& model,
                                   const TheoremParams& p, const State& z0,
                                   long reps, std::uint64_t seed,
                                   const MomentOptions& opt) {
    const double gamma = model.gamma();
    EstimateReport r;
    switch (part) {
        case 1: {
            if (!(gamma > 2.0 * p.m0)) hypothesis_fail("gamma > 2*m0");
            if (!(p.m0 >= 1.0)) hypothesis_fail("m0 >= 1");
            const double C = (1.0 - p.delta) * gamma - 2.0 * p.m0;
            if (!(C > 0.0)) hypothesis_fail("(1-delta)*gamma > 2*m0");
            r = estimate_tau_moment(model, z0, p.K, p.m0, 1.0, reps, seed, opt);
            // Safe form of the drift bound; equals the plain one when C >= 1.
            r.bound = v(p.m0, z0) / std::min(1.0, C);
            r.quantity = "E[tau] vs V_m0(Z0)";
            break;
        }
        case 2: {
            if (!(gamma > 2.0 * p.m0)) hypothesis_fail("gamma > 2*m0");
            if (!(2.0 * p.m0 > 2.0 * (1.0 + 2.0 * p.k)))
                hypothesis_fail("m0 > 1 + 2k");
            const double C =
                constant_C(p.k, p.K, p.m, p.m0, gamma, p.delta, p.epsilon);
            r = estimate_tau_moment(model, z0, p.K, p.m0, p.k + 1.0, reps, seed,
                                    opt);
            r.bound = C * v(p.m0, z0);
            r.quantity = "E[tau^(k+1)] vs C(k,K)*V_m0(Z0)";
            break;
        }
        case 3: {
            if (!(gamma > 2.0 * p.m0)) hypothesis_fail("gamma > 2*m0");
            if (!(2.0 * p.m0 > 2.0 * (1.0 + p.k))) hypothesis_fail("m0 > 1 + k");
            if (!(p.K1 < p.K)) hypothesis_fail("K1 < K");
            const QEstimate q = estimate_q(model, p.K, p.K1, p.m0, p.q_reps,
                                           p.q_grid, seed ^ 0xABCDEF1234567890ULL,
                                           opt.method, opt.exec);
            if (!(q.q_low > 0.0))
                throw std::runtime_error(
                    "check_theorem_bound: estimated q lower bound is 0");
            const double Ct = constant_C_tilde(p.k, p.k1, p.K, q.q_low, p.m, p.m0,
                                               gamma, p.delta, p.epsilon);
            r = estimate_tau_moment(model, z0, p.K1, p.m0, p.k + 1.0, reps, seed,
                                    opt);
            r.bound = Ct * std::max(v(p.m0, z0), p.K + 1.0);
            r.quantity = "E[tau(K1)^(k+1)] vs C~*(V_m0(Z0) v (K+1))";
            break;
        }
        default:
            throw std::invalid_argument("check_theorem_bound: part must be 1, 2 or 3");
    }
    apply_verdict(r);
    return r;
}

EstimateReport dynkin_residual(const IntensityModel& model, const TestFunction& h,
                               const State& z0, double t, long reps,
                               std::uint64_t seed, const MomentOptions& opt) {
    if (!(t > 0.0)) throw std::invalid_argument("dynkin_residual: t must be > 0");
    auto residuals = run_replications(reps, seed, opt.exec, [&](long rep,
                                                                RngStream&) {
        const Path path = simulate_path(model, z0, t, seed,
                                        static_cast<std::uint64_t>(rep), opt.method);
        double integral = 0.0;
        State z = z0;
        double seg_start = 0.0;
        auto add_segment = [&](double len) {
            if (len <= 0.0) return;
            const auto breaks = model.breakpoints(z, len);
            integral += integrate_piecewise(
                [&](double s) { return generator_apply(model, h, flow(z, s)); },
                0.0, len, breaks, 1e-10);
        };
        for (const JumpRecord& j : path.jumps) {
            add_segment(j.time - seg_start);
            z = j.state_after;
            seg_start = j.time;
        }
        add_segment(t - seg_start);
        return h.value(path.at(t)) - h.value(z0) - integral;
    });
    const SampleStats s = summarize(residuals);
    EstimateReport r;
    r.quantity = "Dynkin residual";
    r.n = s.n;
    r.point = s.mean;
    r.std_err = s.std_err;
    r.seed = seed;
    r.ci_low = s.mean - z99 * s.std_err;
    r.ci_high = s.mean + z99 * s.std_err;
    r.bound = 0.0;
    r.verdict = std::abs(s.mean) <= 4.0 * s.std_err ? Verdict::consistent
                                                    : Verdict::violated;
    return r;
}

double OccupationReport::ks_to_exponential_x(double rate) const {
    double d = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
        d = std::max(d, std::abs(x_cdf[k] - (1.0 - std::exp(-rate * grid[k]))));
    return d;
}

double OccupationReport::ks_to_exponential_y(double rate) const {
    double d = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
        d = std::max(d, std::abs(y_cdf[k] - (1.0 - std::exp(-rate * grid[k]))));
    return d;
}

OccupationReport stationary_occupation(const IntensityModel& model, const State& z0,
                                       double horizon, double burn_in, int bins,
                                       std::uint64_t seed, SampleMethod method,
                                       double grid_max) {
    if (!(horizon > burn_in))
        throw std::invalid_argument("stationary_occupation: horizon must exceed burn_in");
    OccupationReport rep;
    rep.horizon = horizon;
    rep.burn_in = burn_in;

    // Segment intervals swept by the clocks after burn-in: the occupation
    // measure of x restricted to one segment is Lebesgue on [x_begin, x_end].
    std::vector<double> x_lo, x_hi, y_lo, y_hi;
    const double total = horizon - burn_in;

    RngStream rng(seed, 0);
    State z = z0;
    double t = 0.0;
    while (t < horizon) {
        const Event ev = sample_event(model, z, rng, method);
        const double seg_end = std::min(t + ev.wait, horizon);
        const double a = std::max(t, burn_in);
        if (seg_end > a) {
            const double len = seg_end - a;
            rep.regime_fraction[z.i][z.j] += len;
            x_lo.push_back(z.x + (a - t));
            x_hi.push_back(z.x + (seg_end - t));
            y_lo.push_back(z.y + (a - t));
            y_hi.push_back(z.y + (seg_end - t));
        }
        t += ev.wait;
        if (t < horizon) z = apply_jump(flow(z, ev.wait), ev.component);
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rep.regime_fraction[i][j] /= total;
    rep.frac_i0 = rep.regime_fraction[0][0] + rep.regime_fraction[0][1];
    rep.frac_j0 = rep.regime_fraction[0][0] + rep.regime_fraction[1][0];

    // Exact occupation CDF at grid points via sorted endpoints:
    // CDF(g) = sum_seg (min(g, hi) - lo)^+ / total.
    auto build_cdf = [&](std::vector<double>& lo, std::vector<double>& hi,
                         const std::vector<double>& grid) {
        std::sort(lo.begin(), lo.end());
        std::sort(hi.begin(), hi.end());
        std::vector<double> lo_prefix(lo.size() + 1, 0.0),
            hi_prefix(hi.size() + 1, 0.0);
        for (std::size_t k = 0; k < lo.size(); ++k)
            lo_prefix[k + 1] = lo_prefix[k] + lo[k];
        for (std::size_t k = 0; k < hi.size(); ++k)
            hi_prefix[k + 1] = hi_prefix[k] + hi[k];
        std::vector<double> cdf(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double g = grid[k];
            const auto nlo = static_cast<std::size_t>(
                std::upper_bound(lo.begin(), lo.end(), g) - lo.begin());
            const auto nhi = static_cast<std::size_t>(
                std::upper_bound(hi.begin(), hi.end(), g) - hi.begin());
            const double below_lo = g * static_cast<double>(nlo) - lo_prefix[nlo];
            const double below_hi = g * static_cast<double>(nhi) - hi_prefix[nhi];
            cdf[k] = (below_lo - below_hi) / total;
        }
        return cdf;
    };

    rep.grid.resize(static_cast<std::size_t>(bins));
    for (int k = 0; k < bins; ++k)
        rep.grid[static_cast<std::size_t>(k)] =
            grid_max * static_cast<double>(k + 1) / static_cast<double>(bins);
    rep.x_cdf = build_cdf(x_lo, x_hi, rep.grid);
    rep.y_cdf = build_cdf(y_lo, y_hi, rep.grid);
    return rep;
}

RegenerationRecord regeneration_sequence(const IntensityModel& model, const State& z0,
                                         double K, double K1, double m, int n_cycles,
                                         RngStream& rng, SampleMethod method,
                                         double time_cap) {
    if (!(K1 < K)) throw std::invalid_argument("regeneration_sequence: need K1 < K");
    if (n_cycles < 1) throw std::invalid_argument("regeneration_sequence: n_cycles >= 1");
    RegenerationRecord rec;
    State z = z0;
    double t = 0.0;
    if (v(m, z0) <= K1) rec.tau_K1 = 0.0;
    const double exit_level = std::pow(K + 1.0, 1.0 / m);  // on 1+x+y

    auto note_k1 = [&](const State& s, double at) {
        if (!rec.tau_K1 && v(m, s) <= K1) rec.tau_K1 = at;
    };

    double prev_T = 0.0;
    for (int cycle = 1; cycle <= n_cycles; ++cycle) {
        // Return to the K-sublevel set.  V grows along the flow, so entry
        // happens at a jump (or immediately).
        while (v(m, z) > K) {
            const Event ev = sample_event(model, z, rng, method);
            t += ev.wait;
            if (t > time_cap) return rec;
            z = apply_jump(flow(z, ev.wait), ev.component);
            note_k1(z, t);
        }
        const double tau = t;
        rec.tau_n.push_back(tau);
        rec.delta_n.push_back(tau - prev_T);

        // Capped exit: first crossing of the (K+1)-level along the flow,
        // but at most one time unit.  Jumps contract V, so crossings are
        // always upward through the flow.
        const double deadline = tau + 1.0;
        double T = deadline;
        while (true) {
            const double until_exit = exit_level - (1.0 + z.x + z.y);
            const double t_exit = t + std::max(until_exit, 0.0);
            const Event ev = sample_event(model, z, rng, method);
            const double t_jump = t + ev.wait;
            if (std::min(t_exit, deadline) <= t_jump) {
                T = std::min(t_exit, deadline);
                z = flow(z, T - t);
                t = T;
                break;
            }
            t = t_jump;
            z = apply_jump(flow(z, ev.wait), ev.component);
            note_k1(z, t);
        }
        rec.T_n.push_back(T);
        rec.state_at_T.push_back(z);
        prev_T = T;
    }
    return rec;
}

QEstimate estimate_q(const IntensityModel& model, double K, double K1, double m,
                     long reps_per_point, int grid_n, std::uint64_t seed,
                     SampleMethod method, Execution exec) {
    if (!(K1 < K)) throw std::invalid_argument("estimate_q: need K1 < K");
    if (reps_per_point < 1000)
        throw std::invalid_argument("estimate_q: reps must be >= 1e3");
    const double span = std::pow(K + 1.0, 1.0 / m) - 1.0;  // x+y budget in K(K+1)
    std::vector<State> starts;
    const int g = std::max(grid_n - 1, 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a <= g; ++a)
                for (int b = 0; a + b <= g; ++b)
                    starts.push_back({i, span * a / g, j, span * b / g});

    QEstimate est;
    est.grid_points = static_cast<long>(starts.size());
    est.reps_per_point = reps_per_point;
    est.q_low = 1.0;
    est.min_freq = 1.0;
    std::uint64_t point_id = 0;
    for (const State& start : starts) {
        auto hits = run_replications(
            reps_per_point, seed ^ (0x517CC1B727220A95ULL * ++point_id), exec,
            [&](long, RngStream& rng) {
                if (v(m, start) <= K1) return 1.0;
                State z = start;
                double t = 0.0;
                while (true) {
                    const Event ev = sample_event(model, z, rng, method);
                    t += ev.wait;
                    if (t > 1.0) return 0.0;
                    z = apply_jump(flow(z, ev.wait), ev.component);
                    if (v(m, z) <= K1) return 1.0;
                }
            });
        const long nhit = static_cast<long>(pairwise_sum(hits));
        const double freq =
            static_cast<double>(nhit) / static_cast<double>(reps_per_point);
        est.min_freq = std::min(est.min_freq, freq);
        est.q_low = std::min(est.q_low, binomial_lower_bound99(nhit, reps_per_point));
    }
    return est;
}

ExcursionReport estimate_excursion_survival(const IntensityModel& model,
                                            const State& z0, double K, double K1,
                                            double m, int max_cycles, long reps,
                                            std::uint64_t seed, SampleMethod method,
                                            Execution exec) {
    ExcursionReport out;
    out.reps = reps;
    const std::size_t L = static_cast<std::size_t>(max_cycles);
    std::vector<std::vector<char>> missed(static_cast<std::size_t>(reps));
    std::vector<double> eta2(static_cast<std::size_t>(reps), 0.0);
    std::vector<char> ind1(static_cast<std::size_t>(reps), 0);

    auto one = [&](long rep, RngStream& rng) {
        const RegenerationRecord rec = regeneration_sequence(
            model, z0, K, K1, m, max_cycles, rng, method);
        auto& row = missed[static_cast<std::size_t>(rep)];
        row.assign(L, 0);
        for (std::size_t l = 0; l < L && l < rec.T_n.size(); ++l)
            row[l] = !(rec.tau_K1 && *rec.tau_K1 <= rec.T_n[l]);
        // Diagnostic pieces: eta_2 = Delta^1 + Delta^2 and the indicator
        // that the small set was still unseen at the first return.
        if (rec.delta_n.size() >= 2) eta2[static_cast<std::size_t>(rep)] =
            rec.delta_n[0] + rec.delta_n[1];
        ind1[static_cast<std::size_t>(rep)] =
            !(rec.tau_K1 && rec.tau_n.size() >= 1 && *rec.tau_K1 <= rec.tau_n[0]);
        return 0.0;
    };
    (void)run_replications(reps, seed, exec, one);

    out.freq.resize(L);
    out.std_err.resize(L);
    for (std::size_t l = 0; l < L; ++l) {
        long cnt = 0;
        for (const auto& row : missed) cnt += row.size() > l ? row[l] : 0;
        const double f = static_cast<double>(cnt) / static_cast<double>(reps);
        out.freq[l] = f;
        out.std_err[l] = std::sqrt(f * (1.0 - f) / static_cast<double>(reps));
    }

    // Pearson correlation, reported but never asserted.
    double me = 0.0, mi = 0.0;
    for (std::size_t r = 0; r < eta2.size(); ++r) {
        me += eta2[r];
        mi += ind1[r];
    }
    me /= static_cast<double>(reps);
    mi /= static_cast<double>(reps);
    double see = 0.0, sii = 0.0, sei = 0.0;
    for (std::size_t r = 0; r < eta2.size(); ++r) {
        see += (eta2[r] - me) * (eta2[r] - me);
        sii += (ind1[r] - mi) * (ind1[r] - mi);
        sei += (eta2[r] - me) * (ind1[r] - mi);
    }
    out.eta_indicator_corr =
        (see > 0.0 && sii > 0.0) ? sei / std::sqrt(see * sii) : 0.0;
    return out;
}

}  // namespace relsim
