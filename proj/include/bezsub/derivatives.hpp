#ifndef BEZSUB_DERIVATIVES_HPP
#define BEZSUB_DERIVATIVES_HPP

#include <cstddef>
#include <vector>

#include "bezsub/fastsub.hpp"
#include "bezsub/geometry.hpp"
#include "bezsub/instrumentation.hpp"

namespace bezsub {

/// All endpoint derivatives P^(k)(0) for k = 0..n, in O(d n log n).
///
/// The binomial sums sum_i C(k,i)(-1)^(k-i) W_i reduce to the subdivision
/// machinery at split 1/2, since B^k_i(1/2) = 2^(-k) C(k,i): negate the
/// odd-indexed points, convolve, and restore a combined per-k factor
/// (-2)^k n!/(n-k)! k!/s^k as one running product, so the rescale happens
/// once per output and factorials are never formed.
inline std::vector<Point> derivatives_at_zero(const ControlPolygon& polygon) {
    const std::size_t n = polygon.degree();
    const std::size_t d = polygon.dimension();
    const SubdivisionPlan plan(n, 0.5);
    const auto& alpha = plan.alpha_prefactors();
    const double s = plan.scale();

    std::vector<double> factor(n + 1);
    factor[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        factor[k] = factor[k - 1] * -2.0 * static_cast<double>(n - k + 1) *
                    (static_cast<double>(k) / s);
    }

    auto& scratch = detail::fastsub_scratch();
    scratch.input.resize((n + 1) * d);
    const double* coords = polygon.coords().data();
    for (std::size_t i = 0; i <= n; ++i) {
        const double a = (i & 1) ? -alpha[i] : alpha[i];
        for (std::size_t b = 0; b < d; ++b) {
            scratch.input[i * d + b] = a * coords[i * d + b];
        }
    }
    plan.transform().convolve_batched(scratch.input, d, plan.beta_spectrum(), scratch.conv);

    std::vector<Point> result(n + 1, Point(d));
    for (std::size_t b = 0; b < d; ++b) {
        result[0][b] = coords[b];
    }
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t b = 0; b < d; ++b) {
            result[k][b] = factor[k] * scratch.conv[k * d + b];
        }
    }
    instrument::add_ops(d * 4 * (n + 1) + 3 * (n + 1));
    return result;
}

/// All endpoint derivatives P^(k)(1): the k-th entry equals the k-th
/// derivative at 0 of the reversed polygon times (-1)^k.
inline std::vector<Point> derivatives_at_one(const ControlPolygon& polygon) {
    std::vector<Point> result = derivatives_at_zero(polygon.reversed());
    for (std::size_t k = 1; k < result.size(); k += 2) {
        for (double& v : result[k]) v = -v;
    }
    return result;
}

} // namespace bezsub

#endif // BEZSUB_DERIVATIVES_HPP
