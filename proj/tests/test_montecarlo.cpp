#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "treeldp/distance_chain.hpp"
#include "treeldp/legendre.hpp"
#include "treeldp/montecarlo.hpp"

using namespace treeldp;

namespace {
const StepDistribution kUniform3 = StepDistribution::uniform(3);
}

TEST_CASE("seeded determinism: identical config, identical estimate") {
    McConfig cfg{kUniform3, 200, 50000, 424242, std::nullopt};
    BoxSpec spec(TimeGrid({0.5, 1.0}), {0.17, 0.34}, 0.08);
    RateEstimate a = estimate_box(cfg, spec);
    RateEstimate b = estimate_box(cfg, spec);
    CHECK(a.prob == b.prob);
    CHECK(a.rate == b.rate);
    CHECK(a.hits == b.hits);
    CHECK(a.prob_stderr == b.prob_stderr);
}

TEST_CASE("empty box: zero hits, flagged insufficient") {
    McConfig cfg{kUniform3, 100, 2000, 7, std::nullopt};
    BoxSpec spec(TimeGrid({1.0}), {5.0}, 0.1);
    RateEstimate est = estimate_box(cfg, spec);
    CHECK(est.hits[0] == 0);
    CHECK(est.flags[0] == "insufficient");
    CHECK(std::isnan(est.rate[0]));
}

TEST_CASE("box covering everything: probability 1, rate exactly 0") {
    McConfig cfg{kUniform3, 50, 3000, 11, std::nullopt};
    BoxSpec spec(TimeGrid({1.0}), {0.5}, 2.0);
    RateEstimate est = estimate_box(cfg, spec);
    CHECK(est.prob[0] == 1.0);
    CHECK(est.rate[0] == 0.0);
    CHECK(est.flags[0] == "ok");
}

TEST_CASE("law of large numbers window around the escape rate") {
    McConfig cfg{kUniform3, 500, 40000, 2024, std::nullopt};
    BoxSpec spec(TimeGrid({1.0}), {1.0 / 3}, 0.2);
    RateEstimate est = estimate_box(cfg, spec);
    CHECK(est.flags[0] == "ok");
    CHECK(est.rate[0] <= 0.01);
}

TEST_CASE("zero tilt agrees with crude sampling") {
    BoxSpec spec(TimeGrid({1.0}), {0.4, }, 0.1);
    McConfig crude{kUniform3, 200, 60000, 5150, std::nullopt};
    McConfig tilted_cfg{kUniform3, 200, 60000, 5151, 0.0};
    RateEstimate a = estimate_box(crude, spec);
    RateEstimate b = tilted_estimate(tilted_cfg, spec);
    CHECK(a.flags[0] == "ok");
    CHECK(b.flags[0] == "ok");
    CHECK(std::abs(a.rate[0] - b.rate[0]) <= 2 * (a.rate_stderr[0] + b.rate_stderr[0]));
}

TEST_CASE("tilted estimates are unbiased against the exact law") {
    // box at n = 8 capturing exactly distance 4
    const int n = 8;
    double exact = simple_walk_distance_dist(3, n).prob(4);
    BoxSpec spec(TimeGrid({1.0}), {0.5}, 0.13);
    int failures = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        McConfig cfg{kUniform3, n, 20000, seed, 0.3};
        RateEstimate est = tilted_estimate(cfg, spec);
        if (std::abs(est.prob[0] - exact) > 3 * est.prob_stderr[0]) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("tilted sampling reaches far boxes that crude sampling misses") {
    const int n = 400;
    const double x = 0.7;
    McConfig cfg{kUniform3, n, 100000, 99, optimal_tilt(3, x)};
    BoxSpec spec(TimeGrid({1.0}), {x}, 0.05);
    RateEstimate est = tilted_estimate(cfg, spec);
    CHECK(est.flags[0] == "ok");
    // the box infimum of the rate sits at its lower edge
    double lo = lambda_star_closed_form(3, x - 0.05);
    CHECK(std::abs(est.rate[0] - lo) <= 0.05);
}

TEST_CASE("wrong-direction tilt is flagged") {
    // box below the escape rate, tilt pushing upward
    McConfig cfg{kUniform3, 300, 20000, 17, 0.5};
    BoxSpec spec(TimeGrid({1.0}), {0.15}, 0.04);
    RateEstimate est = tilted_estimate(cfg, spec);
    CHECK(est.flags[0] != "ok");
}

TEST_CASE("tilting requires uniform mu and the endpoint grid") {
    StepDistribution skewed(3, {0.5, 0.3, 0.2});
    McConfig bad_mu{skewed, 100, 1000, 3, 0.2};
    BoxSpec endpoint(TimeGrid({1.0}), {0.5}, 0.1);
    CHECK_THROWS_AS(tilted_estimate(bad_mu, endpoint), std::invalid_argument);

    McConfig ok_mu{kUniform3, 100, 1000, 3, 0.2};
    BoxSpec two_points(TimeGrid({0.5, 1.0}), {0.2, 0.5}, 0.1);
    CHECK_THROWS_AS(tilted_estimate(ok_mu, two_points), std::invalid_argument);
    McConfig no_tilt{kUniform3, 100, 1000, 3, std::nullopt};
    CHECK_THROWS_AS(tilted_estimate(no_tilt, endpoint), std::invalid_argument);
}

TEST_CASE("larger boxes decay no faster") {
    const double x = 0.55;
    McConfig cfg{kUniform3, 300, 60000, 808, optimal_tilt(3, x)};
    RateEstimate small = tilted_estimate(cfg, BoxSpec(TimeGrid({1.0}), {x}, 0.05));
    RateEstimate large = tilted_estimate(cfg, BoxSpec(TimeGrid({1.0}), {x}, 0.15));
    REQUIRE(small.flags[0] == "ok");
    REQUIRE(large.flags[0] == "ok");
    CHECK(large.rate[0] <= small.rate[0] + 3 * (small.rate_stderr[0] + large.rate_stderr[0]));
}

TEST_CASE("convergence sweep stabilizes along an arithmetic n sequence") {
    const double x = 0.6;
    McConfig cfg{kUniform3, 0, 40000, 31415, optimal_tilt(3, x)};
    BoxSpec spec(TimeGrid({1.0}), {x}, 0.05);
    RateEstimate sweep = convergence_sweep(cfg, spec, {400, 500, 600, 700, 800, 900, 1000});
    CHECK(sweep.stabilization_defined);
    CHECK(sweep.stabilization <= 0.05);
    // sanity: the stabilized value sits near the closed-form box infimum
    double lo = lambda_star_closed_form(3, x - 0.05);
    CHECK(std::abs(sweep.rate.back() - lo) <= 0.06);

    RateEstimate single = convergence_sweep(cfg, spec, {400});
    CHECK(!single.stabilization_defined);

    CHECK_THROWS_AS(convergence_sweep(cfg, spec, {400, 400}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_sweep(cfg, spec, {}), std::invalid_argument);
}
