#include <doctest.h>

#include <cmath>

#include "relsim/quadrature.hpp"
#include "relsim/rng.hpp"

using namespace relsim;

TEST_CASE("rng streams are deterministic and distinct") {
    RngStream a(123, 4), b(123, 4), c(123, 5);
    for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());
    bool any_diff = false;
    RngStream a2(123, 4);
    for (int k = 0; k < 100; ++k) any_diff |= (a2.next_u64() != c.next_u64());
    CHECK(any_diff);
}

TEST_CASE("exponential draws have the right first moment") {
    RngStream rng(99);
    double sum = 0.0;
    const int n = 200'000;
    for (int k = 0; k < n; ++k) sum += rng.exponential();
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("adaptive simpson on closed forms") {
    CHECK(adaptive_simpson([](double s) { return 6.0 / (1.0 + s); }, 0.0, 1.0, 1e-10)
          == doctest::Approx(6.0 * std::log(2.0)).epsilon(1e-10));
    CHECK(adaptive_simpson([](double s) { return std::exp(-s); }, 0.0, 5.0, 1e-10)
          == doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-10));
}

TEST_CASE("piecewise integration handles a step discontinuity exactly") {
    auto step = [](double s) { return s < 2.0 ? 1.0 : 3.0; };
    const double brk = 2.0;
    CHECK(integrate_piecewise(step, 0.0, 5.0, std::span(&brk, 1), 1e-10)
          == doctest::Approx(2.0 + 9.0).epsilon(1e-9));
}

TEST_CASE("solve_increasing inverts a monotone map") {
    auto g = [](double t) { return 6.0 * std::log1p(t); };
    CHECK(solve_increasing(g, 6.0 * std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(solve_increasing(g, 0.0) == 0.0);
    auto lin = [](double t) { return 2.0 * t; };
    CHECK(solve_increasing(lin, std::log(2.0))
          == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-9));
}
