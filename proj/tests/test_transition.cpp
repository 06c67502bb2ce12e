#include <doctest.h>

#include <cmath>

#include "relsim/transition.hpp"

using namespace relsim;

namespace {

IntensityModel unit_model() {
    return {constant_family(1.0), constant_family(1.0), 1.0, 1.0};
}

}  // namespace

TEST_CASE("no-jump probability for constant rates") {
    const auto m = unit_model();  // Lambda = 2
    CHECK(prob_no_jump(m, {0, 0, 0, 0}, 1.0)
          == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
    CHECK(prob_no_jump(m, {0, 0, 0, 0}, 0.0) == doctest::Approx(1.0));
    CHECK(prob_some_jump(m, {0, 0, 0, 0}, 1.0)
          == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("no-jump probability for state-dependent rates") {
    // lambda = mu = 3/(1+own clock), both clocks at 0:
    // H(t) = 6 log(1+t), so P(no jump by 1) = 2^-6.
    const IntensityModel m(reciprocal_family(0.0, 3.0), reciprocal_family(0.0, 3.0),
                           3.0, 3.0);
    CHECK(prob_no_jump(m, {0, 0, 0, 0}, 1.0)
          == doctest::Approx(std::pow(2.0, -6.0)).epsilon(1e-8));
}

TEST_CASE("single-jump window closed form for constant rates") {
    const auto m = unit_model();
    // One first-component jump anywhere in (0,1), nothing else in [0,1]:
    // integral of 1 * e^{-2r} * e^{-2(1-r)} dr = e^{-2}.
    WindowSpec w{0.0, 1.0, 1.0, Component::first};
    CHECK(prob_single_jump_window(m, {0, 0, 0, 0}, w)
          == doctest::Approx(std::exp(-2.0)).epsilon(1e-7));

    // Restricting the window scales linearly for constant rates.
    WindowSpec narrow{0.2, 0.7, 1.0, Component::second};
    CHECK(prob_single_jump_window(m, {0, 0, 0, 0}, narrow)
          == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-7));
}

TEST_CASE("single-jump window vs Monte Carlo for a state-dependent model") {
    const IntensityModel m(reciprocal_family(0.5, 2.0), aging_family(1.0), 0.5, 4.0);
    const State z0{0, 1.0, 1, 0.5};
    const WindowSpec w{0.1, 0.6, 1.0, Component::first};
    const double p = prob_single_jump_window(m, z0, w);
    REQUIRE(p > 0.0);
    REQUIRE(p < 1.0);

    const long n = 200'000;
    long hits = 0;
    for (long r = 0; r < n; ++r) {
        RngStream rng(8675309, static_cast<std::uint64_t>(r));
        const Event first = sample_event_thinning(m, z0, rng);
        if (first.wait <= w.s1 || first.wait >= w.t1) continue;
        if (first.component != w.component) continue;
        State after = apply_jump(flow(z0, first.wait), first.component);
        const Event second = sample_event_thinning(m, after, rng);
        hits += (first.wait + second.wait > w.t);
    }
    const double freq = hits / double(n);
    const double se = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(freq - p) <= 4.0 * se);
}

TEST_CASE("window probabilities are monotone in the window") {
    const IntensityModel m(aging_family(0.5), reciprocal_family(0.0, 2.0), 0.5, 3.0);
    const State z0{1, 0.2, 0, 3.0};
    double prev = 0.0;
    for (double t1 = 0.2; t1 <= 1.0; t1 += 0.2) {
        const double p =
            prob_single_jump_window(m, z0, {0.0, t1, 1.0, Component::second});
        CHECK(p >= prev - 1e-10);
        prev = p;
    }
}

TEST_CASE("identity validation passes for both sampling methods") {
    const IntensityModel m(reciprocal_family(0.0, 3.0), reciprocal_family(0.0, 3.0),
                           3.0, 3.0);
    for (const auto method : {SampleMethod::inversion, SampleMethod::thinning}) {
        const auto rep = validate_identities(m, {0, 0, 0, 0}, {0.1, 0.5, 1.0},
                                             20'000, 1234, method);
        REQUIRE(rep.rows.size() == 3);
        CHECK(rep.pass);
        CHECK(rep.max_abs_z <= 4.0);
        for (const auto& row : rep.rows) {
            CHECK(row.analytic > 0.0);
            CHECK(row.std_err > 0.0);
        }
    }
}

TEST_CASE("identity validation is deterministic for a fixed seed") {
    const auto m = unit_model();
    const auto a = validate_identities(m, {0, 0, 0, 0}, {0.25, 0.75}, 10'000, 55);
    const auto b = validate_identities(m, {0, 0, 0, 0}, {0.25, 0.75}, 10'000, 55);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k)
        CHECK(a.rows[k].empirical == b.rows[k].empirical);
}
