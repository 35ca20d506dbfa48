#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "treeldp/errors.hpp"
#include "treeldp/sample_path.hpp"

using namespace treeldp;

namespace {

LatticePath make_path(std::initializer_list<int> letters) {
    std::vector<Letter> steps;
    for (int i : letters) steps.push_back(Letter{i});
    return LatticePath::from_steps(std::move(steps));
}

}  // namespace

TEST_CASE("tent path: two segments with peak at (1/2, 1/2)") {
    StepFunctionPath z = StepFunctionPath::from_walk(make_path({1, 1}));
    CHECK(z.lengths == std::vector<int>({0, 1, 0}));
    PolygonalPath p = polygonal(z);
    CHECK(p.value_at(0.5) == 0.5);
    CHECK(p.value_at(0.25) == 0.25);
    CHECK(p.value_at(1.0) == 0.0);
    CHECK(lipschitz_constant(p) == 1.0);
}

TEST_CASE("monotone walk gives the unit-slope line") {
    StepFunctionPath z = StepFunctionPath::from_walk(make_path({1, 2, 1, 2}));
    PolygonalPath p = polygonal(z);
    for (int i = 0; i <= 4; ++i) CHECK(p.value_at(i / 4.0) == doctest::Approx(i / 4.0));
    CHECK(lipschitz_constant(p) == 1.0);
}

TEST_CASE("polygonal approximation stays within 1/n") {
    StepDistribution mu = StepDistribution::uniform(3);
    for (int n : {10, 100, 1000}) {
        for (int seed = 0; seed < 30; ++seed) {
            LatticePath walk = simulate_walk(mu, n, 5000u + seed);
            StepFunctionPath z = StepFunctionPath::from_walk(walk);
            z.validate();
            PolygonalPath p = polygonal(z);
            CHECK(sup_distance(p, z) <= 1.0 / n);
            CHECK(lipschitz_constant(p) == 1.0);
        }
    }
}

TEST_CASE("synthetic non-walk path has its own Lipschitz constant") {
    PolygonalPath p({0.0, 0.5}, {0.0, 0.75});
    CHECK(lipschitz_constant(p) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("path validation") {
    CHECK_THROWS_AS(PolygonalPath({0.0, 0.5}, {0.1, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonalPath({0.1, 0.5}, {0.0, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonalPath({0.0, 0.5, 0.5}, {0.0, 0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonalPath({0.0, 1.2}, {0.0, 0.2}), std::invalid_argument);
}

TEST_CASE("path functional: straight lines") {
    PolygonalPath identity({0.0, 1.0}, {0.0, 1.0});
    RateFunctionalReport r = mogulskii_rate_simple(3, identity, RateVariant::paper_literal);
    CHECK(r.in_domain());
    CHECK(r.value == doctest::Approx(std::log(1.5)).epsilon(1e-12));

    PolygonalPath drift({0.0, 1.0}, {0.0, 1.0 / 3});
    RateFunctionalReport r0 = mogulskii_rate_simple(3, drift, RateVariant::paper_literal);
    CHECK(std::abs(r0.value) <= 1e-12);
}

TEST_CASE("negative slopes: literal variant infinite, increment variant finite") {
    PolygonalPath dip({0.0, 0.5, 1.0}, {0.0, 0.25, 0.0});  // slopes 1/2, -1/2
    RateFunctionalReport literal = mogulskii_rate_simple(3, dip, RateVariant::paper_literal);
    CHECK(literal.variant == RateVariant::paper_literal);
    CHECK(std::isinf(literal.value));
    CHECK(std::isinf(literal.segment_contributions[1]));
    CHECK(literal.in_domain());  // the path itself is admissible; the slope cost is infinite

    RateFunctionalReport inc = mogulskii_rate_simple(3, dip, RateVariant::increment_rate);
    CHECK(inc.variant == RateVariant::increment_rate);
    double expected = 0.5 * biased_increment_rate(3, 0.5) + 0.5 * biased_increment_rate(3, -0.5);
    CHECK(inc.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(variant_name(RateVariant::increment_rate) == "increment-rate");
}

TEST_CASE("functional is additive under segment splits") {
    PolygonalPath whole({0.0, 0.4, 1.0}, {0.0, 0.2, 0.5});
    PolygonalPath split({0.0, 0.2, 0.4, 0.7, 1.0}, {0.0, 0.1, 0.2, 0.35, 0.5});
    for (RateVariant v : {RateVariant::paper_literal, RateVariant::increment_rate}) {
        double a = mogulskii_rate_simple(3, whole, v).value;
        double b = mogulskii_rate_simple(3, split, v).value;
        CHECK(std::abs(a - b) <= 1e-12);
    }
}

TEST_CASE("out-of-domain paths get an infinite value") {
    PolygonalPath steep({0.0, 0.5, 1.0}, {0.0, 0.75, 0.8});  // Lipschitz 1.5
    RateFunctionalReport r = mogulskii_rate_simple(3, steep, RateVariant::increment_rate);
    CHECK(!r.lipschitz_ok);
    CHECK(std::isinf(r.value));
}

TEST_CASE("assemble_rate: endpoint grid vs closed form and coverage") {
    MgfTable table = build_mgf_table_simple(3, TimeGrid({1.0}),
                                            LambdaGrid::uniform(1, -8.0, 8.0, 65),
                                            {100, 200, 400, 800});
    std::vector<double> axis;
    for (int i = 0; i <= 20; ++i) axis.push_back(0.05 * i);
    RateGrid grid = conjugate(table, {axis});

    PolygonalPath identity({0.0, 1.0}, {0.0, 1.0});
    double assembled = assemble_rate(identity, std::vector<RateGrid>{grid});
    CHECK(std::abs(assembled - std::log(1.5)) <= 5e-3);

    // monotone under enlarging the family
    MgfTable table2 = build_mgf_table_simple(3, TimeGrid({0.5, 1.0}),
                                             LambdaGrid::uniform(2, -2.0, 2.0, 9),
                                             {50, 100, 200, 400});
    std::vector<double> half_axis;
    for (int i = 0; i <= 10; ++i) half_axis.push_back(0.05 * i);
    RateGrid grid2 = conjugate(table2, {half_axis, axis});
    std::vector<RateGrid> both;
    both.push_back(grid);
    both.push_back(grid2);
    double assembled_both = assemble_rate(identity, both);
    CHECK(assembled_both >= assembled - 1e-15);

    PolygonalPath outside({0.0, 1.0}, {0.0, -0.2});
    CHECK_THROWS_AS(assemble_rate(outside, std::vector<RateGrid>{grid}), coverage_error);
    CHECK_THROWS_AS(assemble_rate(identity, std::span<const RateGrid>{}), std::invalid_argument);
}

TEST_CASE("flat path: assembled endpoint bound matches the rate at zero") {
    MgfTable table = build_mgf_table_simple(3, TimeGrid({1.0}),
                                            LambdaGrid::uniform(1, -8.0, 8.0, 65),
                                            {100, 200, 400, 800});
    std::vector<double> axis;
    for (int i = 0; i <= 20; ++i) axis.push_back(0.05 * i);
    RateGrid grid = conjugate(table, {axis});
    PolygonalPath flat({0.0, 1.0}, {0.0, 0.0});
    double assembled = assemble_rate(flat, std::vector<RateGrid>{grid});
    CHECK(assembled >= 0.0);
    CHECK(std::abs(assembled - lambda_star_closed_form(3, 0.0)) <= 5e-3);
}
