#ifndef BEZSUB_BERNSTEIN_HPP
#define BEZSUB_BERNSTEIN_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace bezsub {

/// Binomial coefficient C(n, k) as a double, by the multiplicative
/// running product. Factorials are never formed, so values stay exact
/// up to the 2^53 integer limit and merely round beyond it.
inline double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

/// Bernstein basis polynomial B^n_i(t) = C(n,i) t^i (1-t)^(n-i).
/// Indices outside [0, n] evaluate to zero.
inline double bernstein(std::size_t n, long long i, double t) {
    if (i < 0 || static_cast<std::size_t>(i) > n) return 0.0;
    const auto ui = static_cast<std::size_t>(i);
    return std::pow(t, static_cast<double>(ui)) *
           std::pow(1.0 - t, static_cast<double>(n - ui)) * binomial(n, ui);
}

/// All basis values [B^n_0(t), ..., B^n_n(t)] via the degree-raising
/// triangle of convex combinations; every intermediate stays in [0, 1].
inline std::vector<double> bernstein_row(std::size_t n, double t) {
    std::vector<double> row(n + 1, 0.0);
    row[0] = 1.0;
    const double u = 1.0 - t;
    for (std::size_t k = 1; k <= n; ++k) {
        row[k] = t * row[k - 1];
        for (std::size_t i = k - 1; i > 0; --i) {
            row[i] = t * row[i - 1] + u * row[i];
        }
        row[0] = u * row[0];
    }
    return row;
}

} // namespace bezsub

#endif // BEZSUB_BERNSTEIN_HPP
