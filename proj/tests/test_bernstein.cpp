#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "bezsub/bernstein.hpp"

using bezsub::bernstein;
using bezsub::bernstein_row;
using bezsub::binomial;

TEST_CASE("bernstein point values") {
    CHECK(bernstein(2, 1, 0.5) == 0.5);
    // B^3_1(1/2) = 2^-3 C(3,1)
    CHECK(bernstein(3, 1, 0.5) == 0.375);
    CHECK(bernstein(3, 1, 0.5) == std::pow(2.0, -3.0) * binomial(3, 1));
    // Out-of-range index convention.
    CHECK(bernstein(4, 7, 0.3) == 0.0);
    CHECK(bernstein(4, -1, 0.3) == 0.0);
}

TEST_CASE("bernstein endpoint interpolation") {
    for (std::size_t n : {0u, 1u, 5u, 17u, 64u}) {
        CHECK(bernstein(n, 0, 0.0) == 1.0);
        CHECK(bernstein(n, static_cast<long long>(n), 1.0) == 1.0);
    }
}

TEST_CASE("bernstein symmetry") {
    // 1-t is exact for t >= 0.5 and for dyadic t, so the mirrored call
    // sees the same (t, 1-t) pair there and the identity is tight.
    for (std::size_t n : {1u, 4u, 9u, 33u}) {
        for (double t : {0.5, 0.625, 0.77, 0.9, 1.0, 0.25, 0.375}) {
            for (std::size_t i = 0; i <= n; ++i) {
                const double a = bernstein(n, static_cast<long long>(i), t);
                const double b = bernstein(n, static_cast<long long>(n - i), 1.0 - t);
                CHECK_THAT(a, Catch::Matchers::WithinULP(b, 2));
            }
        }
    }
    // Below 0.5 the complement itself rounds; the identity still holds to
    // a few ulp per power.
    for (std::size_t n : {4u, 9u}) {
        for (double t : {0.1, 0.3}) {
            for (std::size_t i = 0; i <= n; ++i) {
                const double a = bernstein(n, static_cast<long long>(i), t);
                const double b = bernstein(n, static_cast<long long>(n - i), 1.0 - t);
                CHECK_THAT(a, Catch::Matchers::WithinRel(b, 1e-14));
            }
        }
    }
}

TEST_CASE("bernstein row examples") {
    CHECK(bernstein_row(1, 0.25) == std::vector<double>{0.75, 0.25});
    CHECK(bernstein_row(2, 0.5) == std::vector<double>{0.25, 0.5, 0.25});
    CHECK(bernstein_row(0, 0.7) == std::vector<double>{1.0});
}

TEST_CASE("bernstein row sums to one") {
    // Rounding drift in the convex-combination triangle grows with the
    // degree; the 4-ulp bound is for small n, the absolute 1e-12 bound
    // below covers the rest.
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u}) {
        for (double t : {0.0, 0.3, 0.5, 0.9, 1.0}) {
            const auto row = bernstein_row(n, t);
            const double sum = std::accumulate(row.begin(), row.end(), 0.0);
            CHECK_THAT(sum, Catch::Matchers::WithinULP(1.0, 4));
        }
    }
}

TEST_CASE("partition of unity up to degree 64") {
    for (std::size_t n = 0; n <= 64; ++n) {
        for (int k = 0; k <= 10; ++k) {
            const double t = static_cast<double>(k) / 10.0;
            const auto row = bernstein_row(n, t);
            const double sum = std::accumulate(row.begin(), row.end(), 0.0);
            CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("row matches pointwise evaluation") {
    for (std::size_t n : {3u, 7u, 21u}) {
        const double t = 0.37;
        const auto row = bernstein_row(n, t);
        for (std::size_t i = 0; i <= n; ++i) {
            CHECK_THAT(row[i],
                       Catch::Matchers::WithinRel(bernstein(n, static_cast<long long>(i), t),
                                                  1e-13));
        }
    }
}

TEST_CASE("binomial running product") {
    CHECK(binomial(0, 0) == 1.0);
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(10, 10) == 1.0);
    CHECK(binomial(4, 7) == 0.0);
    // Stays finite and accurate where factorial quotients would overflow.
    CHECK_THAT(binomial(64, 32), Catch::Matchers::WithinRel(1.832624140942590534e18, 1e-14));
}
