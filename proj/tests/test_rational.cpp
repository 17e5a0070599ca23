#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bezsub/decasteljau.hpp"
#include "bezsub/rational.hpp"
#include "oracles.hpp"

using bezsub::ControlPolygon;
using bezsub::evaluate_rational;
using bezsub::RationalControlPolygon;
using bezsub::subdivide_left_fft;
using bezsub::subdivide_left_rational;
using bezsub::SubdivisionPlan;

TEST_CASE("uniform weights reduce to the polynomial case") {
    std::mt19937_64 rng(51);
    const auto poly = oracles::random_polygon(rng, 6, 2);
    const SubdivisionPlan plan(6, 0.35);

    const RationalControlPolygon unit(poly, std::vector<double>(7, 1.0));
    const auto left = subdivide_left_rational(plan, unit);
    CHECK(left.weights() == std::vector<double>(7, 1.0));
    CHECK(left.polygon() == subdivide_left_fft(plan, poly));

    const RationalControlPolygon doubled(poly, std::vector<double>(7, 2.0));
    const auto left2 = subdivide_left_rational(plan, doubled);
    CHECK(left2.weights() == std::vector<double>(7, 2.0));
    CHECK(left2.polygon() == subdivide_left_fft(plan, poly));
}

TEST_CASE("weighted line example") {
    const RationalControlPolygon rational(ControlPolygon::scalar({0.0, 1.0}), {1.0, 2.0});
    const SubdivisionPlan plan(1, 0.5);
    const auto left = subdivide_left_rational(plan, rational);
    CHECK_THAT(left.weights()[0], Catch::Matchers::WithinRel(1.0, 1e-14));
    CHECK_THAT(left.weights()[1], Catch::Matchers::WithinRel(1.5, 1e-14));
    CHECK(left.polygon().coords()[0] == 0.0);
    CHECK_THAT(left.polygon().coords()[1], Catch::Matchers::WithinRel(2.0 / 3.0, 1e-13));
}

TEST_CASE("degree zero is the identity") {
    const RationalControlPolygon rational(ControlPolygon::scalar({4.5}), {3.0});
    const SubdivisionPlan plan(0, 0.8);
    const auto left = subdivide_left_rational(plan, rational);
    CHECK(left.polygon().coords() == std::vector<double>{4.5});
    CHECK(left.weights() == std::vector<double>{3.0});
}

TEST_CASE("evaluation examples") {
    std::mt19937_64 rng(52);
    const auto poly = oracles::random_polygon(rng, 5, 2);
    const RationalControlPolygon unit(poly, std::vector<double>(6, 1.0));
    for (const double t : {0.0, 0.3, 1.0}) {
        const auto got = evaluate_rational(unit, t);
        const auto want = bezsub::evaluate(poly, t);
        CHECK_THAT(got[0], Catch::Matchers::WithinRel(want[0], 1e-13));
        CHECK_THAT(got[1], Catch::Matchers::WithinRel(want[1], 1e-13));
    }

    const RationalControlPolygon line(ControlPolygon::scalar({0.0, 1.0}), {1.0, 2.0});
    CHECK_THAT(evaluate_rational(line, 1.0)[0], Catch::Matchers::WithinRel(1.0, 1e-14));
    CHECK_THAT(evaluate_rational(line, 0.5)[0], Catch::Matchers::WithinRel(2.0 / 3.0, 1e-14));
    CHECK_THROWS_AS(evaluate_rational(line, 1.5), std::domain_error);
}

TEST_CASE("matches the projective-lift oracle") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 1 + rng() % 20;
        const std::size_t d = 1 + rng() % 3;
        const auto poly = oracles::random_polygon(rng, n, d);
        std::vector<double> weights(n + 1);
        for (double& w : weights) {
            w = 0.5 + 1.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        }
        const RationalControlPolygon rational(poly, std::move(weights));
        const double c = 0.1 + 0.8 * static_cast<double>(rng() >> 11) * 0x1.0p-53;

        const SubdivisionPlan plan(n, c);
        const auto got = subdivide_left_rational(plan, rational);

        const auto lifted_left = bezsub::subdivide(oracles::lift_rational(rational), c).left;
        const auto want = oracles::project_rational(lifted_left);

        for (std::size_t k = 0; k <= n; ++k) {
            CHECK_THAT(got.weights()[k], Catch::Matchers::WithinRel(want.weights()[k], 1e-9));
            CHECK(got.weights()[k] > 0.0);
            for (std::size_t a = 0; a < d; ++a) {
                CHECK_THAT(got.polygon().coord(k, a),
                           Catch::Matchers::WithinRel(want.polygon().coord(k, a), 1e-9));
            }
        }
    }
}

TEST_CASE("left segment ends on the curve") {
    std::mt19937_64 rng(54);
    const auto poly = oracles::random_polygon(rng, 9, 2);
    std::vector<double> weights(10);
    for (double& w : weights) w = 0.5 + 1.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const RationalControlPolygon rational(poly, std::move(weights));
    const double c = 0.62;
    const SubdivisionPlan plan(9, c);
    const auto left = subdivide_left_rational(plan, rational);
    const auto end = evaluate_rational(left, 1.0);
    const auto split = evaluate_rational(rational, c);
    CHECK_THAT(end[0], Catch::Matchers::WithinRel(split[0], 1e-9));
    CHECK_THAT(end[1], Catch::Matchers::WithinRel(split[1], 1e-9));
}

TEST_CASE("degree mismatch is rejected") {
    const RationalControlPolygon rational(ControlPolygon::scalar({0.0, 1.0}), {1.0, 2.0});
    const SubdivisionPlan plan(2, 0.5);
    CHECK_THROWS_AS(subdivide_left_rational(plan, rational), std::invalid_argument);
}
