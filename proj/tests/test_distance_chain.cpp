#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "treeldp/distance_chain.hpp"

using namespace treeldp;

TEST_CASE("simple walk distance law, small n") {
    DistanceDistribution d1 = simple_walk_distance_dist(3, 1);
    CHECK(d1.prob(1) == 1.0);

    DistanceDistribution d2 = simple_walk_distance_dist(3, 2);
    CHECK(d2.prob(0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(d2.prob(2) == doctest::Approx(2.0 / 3).epsilon(1e-15));

    DistanceDistribution d4 = simple_walk_distance_dist(3, 4);
    double monotone = (2.0 / 3) * (2.0 / 3) * (2.0 / 3);
    CHECK(std::abs(d4.prob(4) - monotone) <= 1e-15);
}

TEST_CASE("biased walk law, small n, and sign symmetry") {
    SignedDistribution s1 = biased_walk_dist(3, 1);
    CHECK(s1.prob(1) == 0.5);
    CHECK(s1.prob(-1) == 0.5);

    SignedDistribution s2 = biased_walk_dist(3, 2);
    CHECK(s2.prob(2) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(s2.prob(-2) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(s2.prob(0) == doctest::Approx(1.0 / 3).epsilon(1e-15));

    for (int n : {5, 12, 31}) {
        SignedDistribution s = biased_walk_dist(4, n);
        for (int k = 0; k <= n; ++k) CHECK(s.prob(k) == s.prob(-k));  // mirrored arithmetic
    }
}

TEST_CASE("abs pushforward basics") {
    CHECK(abs_pushforward(biased_walk_dist(3, 0)).prob(0) == 1.0);
    CHECK(abs_pushforward(biased_walk_dist(3, 1)).prob(1) == 1.0);
    DistanceDistribution folded = abs_pushforward(biased_walk_dist(3, 2));
    CHECK(folded.prob(0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(folded.prob(2) == doctest::Approx(2.0 / 3).epsilon(1e-15));
}

TEST_CASE("coupling: folded biased walk equals the distance chain") {
    for (int d : {3, 4, 5}) {
        for (int n = 0; n <= 60; ++n) {
            DistanceDistribution folded = abs_pushforward(biased_walk_dist(d, n));
            DistanceDistribution direct = simple_walk_distance_dist(d, n);
            for (int k = 0; k <= n; ++k)
                CHECK(std::abs(folded.prob(k) - direct.prob(k)) <= 1e-12);
        }
    }
}

TEST_CASE("mass conservation and parity hold after every step") {
    for (int n = 0; n <= 100; ++n) {
        CHECK_NOTHROW(simple_walk_distance_dist(3, n).validate(1e-12));
        CHECK_NOTHROW(biased_walk_dist(5, n).validate(1e-12));
    }
}

TEST_CASE("brute force oracle agrees with the chain for uniform steps") {
    StepDistribution mu = StepDistribution::uniform(3);
    for (int n = 1; n <= 10; ++n) {
        DistanceDistribution brute = brute_force_distance_dist(mu, n);
        DistanceDistribution chain = simple_walk_distance_dist(3, n);
        for (int k = 0; k <= n; ++k)
            CHECK(std::abs(brute.prob(k) - chain.prob(k)) <= 1e-12);
    }
}

TEST_CASE("non-uniform law at n = 2") {
    StepDistribution mu(3, {0.5, 0.3, 0.2});
    DistanceDistribution dist = brute_force_distance_dist(mu, 2);
    CHECK(dist.prob(0) == doctest::Approx(0.38).epsilon(1e-13));
    CHECK(dist.prob(2) == doctest::Approx(0.62).epsilon(1e-13));
    CHECK(brute_force_distance_dist(mu, 1).prob(1) == 1.0);
}

// For a non-uniform step law the one-step down-probability from distance 1
// depends on the elapsed time: the distance process alone is not Markov.
// Conditional down-probabilities are computed by exhaustive enumeration.
TEST_CASE("non-Markov witness for a non-uniform step law") {
    auto conditional_down = [](const StepDistribution& mu, int t) {
        double at_one = 0.0, down = 0.0;
        enumerate_paths(mu, t + 1, [&](const LatticePath& p, double w) {
            if (p.prefix_lengths[static_cast<std::size_t>(t)] != 1) return;
            at_one += w;
            if (p.prefix_lengths[static_cast<std::size_t>(t + 1)] == 0) down += w;
        });
        return down / at_one;
    };

    StepDistribution skewed(3, {0.5, 0.3, 0.2});
    double early = conditional_down(skewed, 1);
    double late = conditional_down(skewed, 3);
    // closed forms: sum p^2 and (2 s2^2 - s4) / (2 s2 - s3)
    double s2 = 0.38, s3 = 0.16, s4 = 0.0722;
    CHECK(early == doctest::Approx(s2).epsilon(1e-12));
    CHECK(late == doctest::Approx((2 * s2 * s2 - s4) / (2 * s2 - s3)).epsilon(1e-12));
    CHECK(std::abs(early - late) > 0.01);

    StepDistribution uniform = StepDistribution::uniform(3);
    CHECK(conditional_down(uniform, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(conditional_down(uniform, 3) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("mean drift approaches (d-2)/d") {
    DistanceDistribution dist = simple_walk_distance_dist(3, 2000);
    CHECK(std::abs(dist.mean() / 2000.0 - 1.0 / 3) <= 0.01);
}

TEST_CASE("exact rational DP matches the double DP") {
    for (int n : {1, 2, 7, 20, 30}) {
        auto exact = simple_walk_distance_dist_exact(3, n);
        DistanceDistribution dp = simple_walk_distance_dist(3, n);
        rational total = 0;
        for (int k = 0; k <= n; ++k) {
            total += exact[static_cast<std::size_t>(k)];
            CHECK(std::abs(dp.prob(k) - static_cast<double>(exact[static_cast<std::size_t>(k)])) <=
                  1e-14);
            if ((k - n) % 2 != 0) CHECK(exact[static_cast<std::size_t>(k)] == 0);
        }
        CHECK(total == 1);
    }
    CHECK_THROWS_AS(simple_walk_distance_dist_exact(3, 65), std::invalid_argument);

    auto biased = biased_walk_dist_exact(3, 2);
    CHECK(biased[0] == rational(1, 3));   // position -2
    CHECK(biased[2] == rational(1, 3));   // position 0
    CHECK(biased[4] == rational(1, 3));   // position +2
}
