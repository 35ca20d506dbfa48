#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "treeldp/errors.hpp"
#include "treeldp/walk.hpp"

using namespace treeldp;
using rational = boost::multiprecision::cpp_rational;

TEST_CASE("step distribution validation") {
    CHECK_THROWS_AS(StepDistribution(2, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(StepDistribution(3, {0.5, 0.5, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(StepDistribution(3, {0.5, 0.5, 0.0}), std::invalid_argument);
    StepDistribution u = StepDistribution::uniform(3);
    CHECK(u.is_uniform());
    for (double p : u.probs()) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("simulate_walk rejects n = 0 and is reproducible") {
    StepDistribution mu = StepDistribution::uniform(3);
    CHECK_THROWS_AS(simulate_walk(mu, 0, 1), std::domain_error);
    LatticePath a = simulate_walk(mu, 50, 99);
    LatticePath b = simulate_walk(mu, 50, 99);
    CHECK(a.steps == b.steps);
    CHECK(a.prefix_lengths == b.prefix_lengths);
    LatticePath c = simulate_walk(mu, 50, 100);
    CHECK(a.steps != c.steps);
}

TEST_CASE("length profile invariants on simulated paths") {
    StepDistribution mu(3, {0.5, 0.3, 0.2});
    for (int seed = 0; seed < 50; ++seed) {
        LatticePath p = simulate_walk(mu, 64, static_cast<std::uint64_t>(seed));
        CHECK(p.prefix_lengths[0] == 0);
        CHECK(p.prefix_lengths[1] == 1);  // first step always extends
        CHECK_NOTHROW(p.validate());
    }
}

TEST_CASE("enumeration: uniform d=3 n=2 gives 9 paths of weight 1/9") {
    StepDistribution mu = StepDistribution::uniform(3);
    int count = 0;
    double mass = 0.0;
    int returns = 0;
    enumerate_paths(mu, 2, [&](const LatticePath& p, double w) {
        ++count;
        mass += w;
        CHECK(w == doctest::Approx(1.0 / 9).epsilon(1e-14));
        if (p.prefix_lengths.back() == 0) ++returns;
    });
    CHECK(count == 9);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    // exactly the (i, i) paths return to the root
    CHECK(returns == 3);
}

TEST_CASE("enumeration: n=8 visits 6561 paths with unit mass") {
    StepDistribution mu = StepDistribution::uniform(3);
    int count = 0;
    double mass = 0.0;
    enumerate_paths(mu, 8, [&](const LatticePath&, double w) {
        ++count;
        mass += w;
    });
    CHECK(count == 6561);
    CHECK(std::abs(mass - 1.0) <= 1e-9);
}

TEST_CASE("enumeration cap carries d^n") {
    StepDistribution mu = StepDistribution::uniform(3);
    try {
        enumerate_paths(mu, 40, [](const LatticePath&, double) {});
        FAIL("expected cap_exceeded_error");
    } catch (const cap_exceeded_error& e) {
        CHECK(e.requested_paths() == doctest::Approx(std::pow(3.0, 40.0)));
        CHECK(e.cap() == kDefaultEnumerationCap);
        CHECK(e.n() == 40);
    }
}

TEST_CASE("enumeration weights match exact rational products") {
    StepDistribution mu(3, {0.5, 0.3, 0.2});
    rational total = 0;
    enumerate_paths(mu, 6, [&](const LatticePath& p, double w) {
        rational exact = 1;
        for (const Letter& s : p.steps) exact *= rational(mu.prob(s));
        CHECK(std::abs(w - static_cast<double>(exact)) <= 1e-12);
        total += exact;
    });
    // mass sums to 1 exactly when the double entries are summed as rationals
    rational one(mu.probs()[0]);
    rational expected = one + rational(mu.probs()[1]) + rational(mu.probs()[2]);
    rational expected_pow = 1;
    for (int i = 0; i < 6; ++i) expected_pow *= expected;
    CHECK(total == expected_pow);
}

TEST_CASE("return probability at step 2: enumeration oracle and Monte Carlo") {
    // uniform: sum p_i^2 = 1/3; mu = (0.5, 0.3, 0.2): 0.38
    for (bool uniform : {true, false}) {
        StepDistribution mu = uniform ? StepDistribution::uniform(3)
                                      : StepDistribution(3, {0.5, 0.3, 0.2});
        double expected = uniform ? 1.0 / 3 : 0.38;
        double exact = 0.0;
        enumerate_paths(mu, 2, [&](const LatticePath& p, double w) {
            if (p.prefix_lengths.back() == 0) exact += w;
        });
        CHECK(exact == doctest::Approx(expected).epsilon(1e-13));

        const int samples = 100000;
        int hits = 0;
        for (int i = 0; i < samples; ++i) {
            LatticePath p = simulate_walk(mu, 2, 1234567u + i);
            if (p.prefix_lengths.back() == 0) ++hits;
        }
        double phat = static_cast<double>(hits) / samples;
        double se = std::sqrt(expected * (1 - expected) / samples);
        CHECK(std::abs(phat - expected) <= 3 * se);
    }
}

TEST_CASE("Monte Carlo endpoint histogram matches enumeration at n = 6") {
    StepDistribution mu = StepDistribution::uniform(3);
    std::map<int, double> exact;
    enumerate_paths(mu, 6, [&](const LatticePath& p, double w) {
        exact[p.prefix_lengths.back()] += w;
    });
    const int samples = 100000;
    std::map<int, int> hist;
    for (int i = 0; i < samples; ++i) {
        LatticePath p = simulate_walk(mu, 6, 777u + i);
        ++hist[p.prefix_lengths.back()];
    }
    for (const auto& [len, prob] : exact) {
        double phat = static_cast<double>(hist[len]) / samples;
        double se = std::sqrt(prob * (1 - prob) / samples);
        CHECK(std::abs(phat - prob) <= 3 * se);
    }
}

TEST_CASE("length_profile_at uses floor indices") {
    LatticePath p = LatticePath::from_steps({Letter{1}, Letter{2}, Letter{2}});
    REQUIRE(p.prefix_lengths == std::vector<int>({0, 1, 2, 1}));
    CHECK(length_profile_at(p, TimeGrid({1.0}), 3) == std::vector<int>({1}));
    CHECK(length_profile_at(p, TimeGrid({0.5, 1.0}), 3) == std::vector<int>({1, 1}));
    CHECK(length_profile_at(p, TimeGrid({1.0 / 3}), 3) == std::vector<int>({1}));
}

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS(TimeGrid({}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.5, 1.5}), std::invalid_argument);
    CHECK(floor_index(10, 0.1) == 1);
    CHECK(floor_index(3, 0.5) == 1);
    CHECK(floor_index(7, 1.0) == 7);
}
