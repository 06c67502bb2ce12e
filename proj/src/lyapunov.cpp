#include "relsim/lyapunov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace relsim {

double v(double m, const State& z) {
    if (!(m >= 0.0)) throw std::invalid_argument("v: m must be >= 0");
    return std::pow(1.0 + z.x + z.y, m);
}

double v_tk(double k, double m, double t, const State& z) {
    if (!(t >= 0.0)) throw std::invalid_argument("v_tk: t must be >= 0");
    return std::pow(1.0 + t, k) * v(m, z);
}

double generator_on_v(const IntensityModel& model, double m, const State& z) {
    if (!(m >= 1.0)) throw std::invalid_argument("generator_on_v: m must be >= 1");
    const auto r = model.evaluate(z);
    const double vm = std::pow(1.0 + z.x + z.y, m);
    const double v_cn = std::pow(1.0 + z.y, m);  // v(m, jump_cn(z))
    const double v_nc = std::pow(1.0 + z.x, m);  // v(m, jump_nc(z))
    const double transport = 2.0 * m * std::pow(1.0 + z.x + z.y, m - 1.0);
    return r.lambda * (v_cn - vm) + r.mu * (v_nc - vm) + transport;
}

TestFunction make_v_function(double m) {
    return {
        [m](const State& z) { return std::pow(1.0 + z.x + z.y, m); },
        [m](const State& z) { return m * std::pow(1.0 + z.x + z.y, m - 1.0); },
        [m](const State& z) { return m * std::pow(1.0 + z.x + z.y, m - 1.0); },
    };
}

double generator_apply(const IntensityModel& model, const TestFunction& h,
                       const State& z) {
    const auto r = model.evaluate(z);
    const double hz = h.value(z);
    return r.lambda * (h.value(jump_cn(z)) - hz) + r.mu * (h.value(jump_nc(z)) - hz) +
           h.dx(z) + h.dy(z);
}

double k_of_delta(double delta, double m) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("k_of_delta: delta must be in (0,1)");
    if (!(m >= 1.0)) throw std::invalid_argument("k_of_delta: m must be >= 1");
    return std::pow(delta, -m);
}

DriftReport drift_check(const IntensityModel& model, const DriftParams& params,
                        const std::vector<State>& grid, double rel_tol) {
    const double K = k_of_delta(params.delta, params.m);
    const double rate = (1.0 - params.delta) * params.gamma - 2.0 * params.m;
    DriftReport report;
    for (const State& z : grid) {
        if (!(v(params.m, z) > K))
            throw std::invalid_argument(
                "drift_check: grid state inside the sublevel set, v(m,Z) <= " +
                std::to_string(K));
        const double lv = generator_on_v(model, params.m, z);
        const double bound = -rate * v(params.m - 1.0, z);
        ++report.checked;
        if (lv > bound + rel_tol * (1.0 + std::abs(bound)))
            report.violations.push_back({z, lv, bound, lv - bound});
    }
    return report;
}

std::vector<State> make_drift_grid(double K, double m, long n_target) {
    const double threshold = std::pow(K, 1.0 / m) - 1.0;  // states need x+y > this
    long axis_n = 8;
    std::vector<State> grid;
    while (static_cast<long>(grid.size()) < n_target && axis_n < 4096) {
        axis_n *= 2;
        grid.clear();
        std::vector<double> axis(static_cast<std::size_t>(axis_n));
        for (long k = 0; k < axis_n; ++k)
            axis[static_cast<std::size_t>(k)] =
                std::expm1(std::log1p(1000.0) * static_cast<double>(k) /
                           static_cast<double>(axis_n - 1));
        for (double x : axis)
            for (double y : axis)
                if (x + y > threshold * (1.0 + 1e-12) + 1e-12)
                    grid.push_back({0, x, 0, y});
    }
    if (static_cast<long>(grid.size()) > n_target)
        grid.resize(static_cast<std::size_t>(n_target));
    return grid;
}

namespace {

[[noreturn]] void constraint_fail(const std::string& what) {
    throw std::invalid_argument("constant_C: constraint failed: " + what);
}

void check_c_constraints(double k, double K, double m, double m0, double gamma,
                         double delta, double epsilon) {
    if (!(delta > 0.0 && delta < 1.0)) constraint_fail("0 < delta < 1");
    if (!(1.0 + k < m)) constraint_fail("1 + k < m");
    if (!(m < m0 - k)) constraint_fail("m < m0 - k");
    if (!(gamma > 2.0 * m0)) constraint_fail("gamma > 2*m0");
    if (!(epsilon > 0.0)) constraint_fail("epsilon > 0");
    if (!(epsilon < (1.0 - delta) * gamma - 2.0 * m))
        constraint_fail("epsilon < (1-delta)*gamma - 2m");
    if (!(K >= k_of_delta(delta, 1.0))) constraint_fail("K >= K(delta)");
}

}  // namespace

double constant_C(double k, double K, double m, double m0, double gamma,
                  double delta, double epsilon) {
    check_c_constraints(k, K, m, m0, gamma, delta, epsilon);
    const double denom = (1.0 - delta) * gamma - 2.0 * m - epsilon;
    const double b = m0 - m;
    return (k + 1.0) / denom *
           (1.0 + std::pow(epsilon, -b) * std::pow(k, 1.0 + b) / (b - k));
}

double constant_C_tilde(double k, double k1, double K, double q, double m,
                        double m0, double gamma, double delta, double epsilon) {
    if (!(q > 0.0)) throw std::invalid_argument("constant_C_tilde: q must be > 0");
    if (!(q <= 1.0)) throw std::invalid_argument("constant_C_tilde: q must be <= 1");
    if (!(k > 0.0 && k < k1))
        throw std::invalid_argument("constant_C_tilde: need 0 < k < k1");
    const double C = constant_C(k1, K, m, m0, gamma, delta, epsilon);
    const double p1 = (k1 + 1.0) / (k + 1.0);
    const double p2 = (k1 + 1.0) / (k1 - k);
    const double r = std::pow(1.0 - q, 1.0 / p2);

    double sum = 0.0;
    for (long l = 1; l < 1'000'000; ++l) {
        const double ld = static_cast<double>(l);
        const double term =
            std::pow(std::pow(ld + 1.0, k1) * (2.0 * C + std::pow(ld, k1 + 1.0)),
                     1.0 / p1) *
            std::pow(1.0 - q, (ld - 1.0) / p2);
        sum += term;
        if (r == 0.0) break;
        // Ratio envelope: polynomial growth factor times the geometric r.
        const double ratio_bound =
            r * std::pow((ld + 2.0) / (ld + 1.0), (2.0 * k1 + 1.0) / p1);
        if (ratio_bound < 1.0) {
            const double tail_bound = term * ratio_bound / (1.0 - ratio_bound);
            if (tail_bound <= 1e-9 * sum) break;
        }
    }
    return sum;
}

}  // namespace relsim
