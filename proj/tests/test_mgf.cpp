#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "treeldp/errors.hpp"
#include "treeldp/mgf.hpp"

using namespace treeldp;

TEST_CASE("checkpointed MGF vanishes at lambda = 0") {
    TimeGrid J({0.5, 1.0});
    std::vector<double> zero{0.0, 0.0};
    CHECK(checkpointed_mgf_simple(3, J, zero, 17) == 0.0);
    CHECK(checkpointed_mgf_bruteforce(StepDistribution::uniform(3), J, zero, 5) == 0.0);
}

TEST_CASE("inert checkpoint leaves the value unchanged") {
    for (int n : {7, 24, 101}) {
        for (double theta : {-2.0, 0.7, 3.0}) {
            std::vector<double> one{theta};
            std::vector<double> two{0.0, theta};
            double a = checkpointed_mgf_simple(3, TimeGrid({1.0}), one, n);
            double b = checkpointed_mgf_simple(3, TimeGrid({0.5, 1.0}), two, n);
            CHECK(std::abs(a - b) <= 1e-12);
        }
    }
}

TEST_CASE("large lambda is dominated by the monotone path") {
    std::vector<double> lambda{50.0};
    double value = checkpointed_mgf_simple(3, TimeGrid({1.0}), lambda, 50);
    CHECK(std::abs(value - (50.0 + std::log(2.0 / 3))) <= 0.1);
}

TEST_CASE("brute force value for a skewed law at n = 2") {
    StepDistribution mu(3, {0.5, 0.3, 0.2});
    std::vector<double> lambda{1.0};
    double value = checkpointed_mgf_bruteforce(mu, TimeGrid({1.0}), lambda, 2);
    double expected = 0.5 * std::log(0.38 + 0.62 * std::exp(2.0));
    CHECK(std::abs(value - expected) <= 1e-12);
}

TEST_CASE("chain DP and enumeration agree for the uniform walk") {
    StepDistribution mu = StepDistribution::uniform(3);
    TimeGrid J({0.5, 1.0});
    const std::vector<std::vector<double>> lambdas = {
        {0.0, 0.0}, {1.0, 0.7}, {-1.0, 0.4}, {0.5, -0.3}, {-0.5, -0.5}};
    for (int n = 1; n <= 8; ++n) {
        for (const auto& lambda : lambdas) {
            double a = checkpointed_mgf_simple(3, J, lambda, n);
            double b = checkpointed_mgf_bruteforce(mu, J, lambda, n);
            CHECK(std::abs(a - b) <= 1e-10);
        }
    }
}

TEST_CASE("finiteness bound: value <= sum |lambda_i| t_i") {
    TimeGrid J({0.3, 0.8});
    for (double l1 : {-3.0, 0.0, 2.0}) {
        for (double l2 : {-1.5, 4.0}) {
            std::vector<double> lambda{l1, l2};
            for (int n : {10, 50, 137}) {
                double value = checkpointed_mgf_simple(3, J, lambda, n);
                CHECK(value <= std::abs(l1) * 0.3 + std::abs(l2) * 0.8 + 1e-9);
            }
        }
    }
}

TEST_CASE("discrete convexity along lambda grid lines") {
    MgfTable table = build_mgf_table_simple(3, TimeGrid({1.0}),
                                            LambdaGrid::uniform(1, -4.0, 4.0, 21),
                                            {50, 100, 200, 400});
    table.validate();
    CHECK(table.max_convexity_violation() <= 1e-9);
}

TEST_CASE("extrapolation: constant and exact 1/n sequences") {
    auto [c0, h0] = extrapolate_limit({100, 200, 400, 800}, {0.5, 0.5, 0.5, 0.5});
    CHECK(c0 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(h0 == 0.0);

    const double c = 0.731, a = -2.4;
    std::vector<int> ns{100, 200, 400, 800};
    std::vector<double> vs;
    for (int n : ns) vs.push_back(c + a / n);
    auto [est, hw] = extrapolate_limit(ns, vs);
    CHECK(std::abs(est - c) <= std::abs(a) / 800);
    CHECK(est == doctest::Approx(c).epsilon(1e-12));
    CHECK(hw == doctest::Approx(std::abs(a / 400 - a / 800)));
}

TEST_CASE("extrapolation needs at least four values") {
    CHECK_THROWS_AS(extrapolate_limit({100, 200, 400}, {1.0, 1.0, 1.0}), insufficient_data_error);
    CHECK_THROWS_AS(extrapolate_limit({100, 100, 200, 400}, {1.0, 1.0, 1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("endpoint limit at lambda = 1 matches the increment MGF") {
    // the biased-increment log-MGF value log((2/3)e + (1/3)e^-1)
    double target = std::log((2.0 / 3) * std::exp(1.0) + (1.0 / 3) * std::exp(-1.0));
    std::vector<int> ns{200, 400, 800, 1600};
    std::vector<double> lambda{1.0};
    std::vector<double> vs;
    for (int n : ns) vs.push_back(checkpointed_mgf_simple(3, TimeGrid({1.0}), lambda, n));
    auto [est, hw] = extrapolate_limit(ns, vs);
    CHECK(std::abs(est - target) <= 5e-3);
    CHECK(hw >= 0.0);
}

TEST_CASE("lambda grid bookkeeping") {
    LambdaGrid g = LambdaGrid::uniform(2, -1.0, 1.0, 5);
    CHECK(g.num_points() == 25);
    CHECK(g.point(0) == std::vector<double>({-1.0, -1.0}));
    CHECK(g.point(24) == std::vector<double>({1.0, 1.0}));
    CHECK(g.point(2)[1] == 0.0);  // midpoint snapped to an exact zero
    CHECK(g.point(8) == std::vector<double>({-0.5, 0.5}));  // first axis slowest
}
