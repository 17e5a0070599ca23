#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bezsub/decasteljau.hpp"
#include "bezsub/instrumentation.hpp"
#include "bezsub/surface.hpp"
#include "oracles.hpp"

using bezsub::ControlPolygon;
using bezsub::evaluate_patch;
using bezsub::subdivide_left_fft;
using bezsub::subdivide_patch_left;
using bezsub::SubdivisionPlan;
using bezsub::TensorPatch;

namespace {

TensorPatch random_patch(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t d) {
    std::vector<double> coords((n + 1) * (m + 1) * d);
    for (double& v : coords) v = 1.0 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return TensorPatch(d, n + 1, m + 1, std::move(coords));
}

} // namespace

TEST_CASE("single-column patch equals curve subdivision") {
    std::mt19937_64 rng(61);
    const auto poly = oracles::random_polygon(rng, 5, 2);
    std::vector<double> coords(poly.coords());
    const TensorPatch patch(2, 6, 1, std::move(coords));
    const SubdivisionPlan plan(5, 0.3);
    const auto left = subdivide_patch_left(plan, patch);
    const auto curve_left = subdivide_left_fft(plan, poly);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(left.point(i, 0)[0] == curve_left.coord(i, 0));
        CHECK(left.point(i, 0)[1] == curve_left.coord(i, 1));
    }
}

TEST_CASE("equal rows stay fixed") {
    // Every column is constant along i, so V_ij = W_j.
    const std::vector<double> row{1.0, 4.0, 2.0};
    std::vector<double> coords;
    for (int i = 0; i < 3; ++i) coords.insert(coords.end(), row.begin(), row.end());
    const TensorPatch patch(1, 3, 3, std::move(coords));
    const SubdivisionPlan plan(2, 0.41);
    const auto left = subdivide_patch_left(plan, patch);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK_THAT(left.point(i, j)[0], Catch::Matchers::WithinRel(row[j], 1e-13));
        }
    }
}

TEST_CASE("bilinear example") {
    const TensorPatch patch(1, 2, 2, {0.0, 0.0, 1.0, 2.0});
    const SubdivisionPlan plan(1, 0.5);
    const auto left = subdivide_patch_left(plan, patch);
    CHECK(left.point(0, 0)[0] == 0.0);
    CHECK(left.point(0, 1)[0] == 0.0);
    CHECK_THAT(left.point(1, 0)[0], Catch::Matchers::WithinAbs(0.5, 1e-14));
    CHECK_THAT(left.point(1, 1)[0], Catch::Matchers::WithinRel(1.0, 1e-14));
}

TEST_CASE("patch evaluation") {
    const TensorPatch patch(1, 2, 2, {0.0, 0.0, 1.0, 2.0});
    CHECK(evaluate_patch(patch, 0.0, 0.0)[0] == 0.0);
    CHECK_THAT(evaluate_patch(patch, 0.5, 0.5)[0], Catch::Matchers::WithinRel(0.75, 1e-14));

    const TensorPatch constant(2, 3, 2, std::vector<double>(12, 5.5));
    const auto p = evaluate_patch(constant, 0.3, 0.8);
    CHECK_THAT(p[0], Catch::Matchers::WithinRel(5.5, 1e-13));
    CHECK_THAT(p[1], Catch::Matchers::WithinRel(5.5, 1e-13));

    CHECK_THROWS_AS(evaluate_patch(patch, -0.1, 0.5), std::domain_error);
}

TEST_CASE("columns are subdivided bit-identically to curves") {
    std::mt19937_64 rng(62);
    const auto patch = random_patch(rng, 7, 4, 3);
    const SubdivisionPlan plan(7, 0.27);
    const auto left = subdivide_patch_left(plan, patch);
    for (std::size_t j = 0; j <= 4; ++j) {
        const auto col_left = subdivide_left_fft(plan, patch.column(j));
        for (std::size_t i = 0; i <= 7; ++i) {
            for (std::size_t a = 0; a < 3; ++a) {
                CHECK(left.point(i, j)[a] == col_left.coord(i, a));
            }
        }
    }
}

TEST_CASE("matches per-column de Casteljau") {
    std::mt19937_64 rng(63);
    for (int rep = 0; rep < 6; ++rep) {
        const std::size_t n = 1 + rng() % 10;
        const std::size_t m = rng() % 10;
        const std::size_t d = 1 + rng() % 3;
        const auto patch = random_patch(rng, n, m, d);
        const double c = 0.1 + 0.8 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const SubdivisionPlan plan(n, c);
        const auto left = subdivide_patch_left(plan, patch);
        for (std::size_t j = 0; j <= m; ++j) {
            const auto want = bezsub::subdivide(patch.column(j), c).left;
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t a = 0; a < d; ++a) {
                    CHECK_THAT(left.point(i, j)[a],
                               Catch::Matchers::WithinRel(want.coord(i, a), 1e-10));
                }
            }
        }
    }
}

TEST_CASE("left patch agrees with the surface on the seam") {
    std::mt19937_64 rng(64);
    const auto patch = random_patch(rng, 6, 5, 2);
    const double c = 0.44;
    const SubdivisionPlan plan(6, c);
    const auto left = subdivide_patch_left(plan, patch);
    for (const double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto got = evaluate_patch(left, 1.0, u);
        const auto want = evaluate_patch(patch, c, u);
        for (std::size_t a = 0; a < 2; ++a) {
            CHECK_THAT(got[a], Catch::Matchers::WithinRel(want[a], 1e-9));
        }
    }
}

TEST_CASE("one beta spectrum per plan regardless of grid size") {
    namespace instrument = bezsub::instrument;
    std::mt19937_64 rng(65);
    const auto patch = random_patch(rng, 6, 9, 3);
    instrument::reset();
    const SubdivisionPlan plan(6, 0.37);
    (void)subdivide_patch_left(plan, patch);
    CHECK(instrument::beta_spectrum_builds == 1);
    // d (m+1) column transforms plus the single beta transform.
    CHECK(instrument::forward_transforms == 1 + 3 * 10);
}

TEST_CASE("u-direction subdivision via transposition") {
    std::mt19937_64 rng(66);
    const auto patch = random_patch(rng, 4, 6, 2);
    const double c = 0.52;
    const SubdivisionPlan plan(6, c);
    const auto left_u = subdivide_patch_left(plan, patch.transposed()).transposed();
    // Each row of the result is the left curve segment of the input row.
    for (std::size_t i = 0; i <= 4; ++i) {
        const auto want = bezsub::subdivide(patch.row(i), c).left;
        for (std::size_t j = 0; j <= 6; ++j) {
            for (std::size_t a = 0; a < 2; ++a) {
                CHECK_THAT(left_u.point(i, j)[a],
                           Catch::Matchers::WithinRel(want.coord(j, a), 1e-10));
            }
        }
    }
}

TEST_CASE("row-degree mismatch is rejected") {
    std::mt19937_64 rng(67);
    const auto patch = random_patch(rng, 3, 2, 1);
    const SubdivisionPlan plan(4, 0.5);
    CHECK_THROWS_AS(subdivide_patch_left(plan, patch), std::invalid_argument);
}
