#ifndef BEZSUB_RATIONAL_HPP
#define BEZSUB_RATIONAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bezsub/decasteljau.hpp"
#include "bezsub/fastsub.hpp"
#include "bezsub/geometry.hpp"

namespace bezsub {

namespace detail {

/// Projective lift: the rational curve (W_i, omega_i) in E^d becomes the
/// polynomial curve (omega_i W_i, omega_i) in E^(d+1).
inline ControlPolygon lift(const RationalControlPolygon& rational) {
    const std::size_t d = rational.dimension();
    const std::size_t n1 = rational.polygon().point_count();
    std::vector<double> flat(n1 * (d + 1));
    for (std::size_t i = 0; i < n1; ++i) {
        const double w = rational.weights()[i];
        for (std::size_t axis = 0; axis < d; ++axis) {
            flat[i * (d + 1) + axis] = w * rational.polygon().coord(i, axis);
        }
        flat[i * (d + 1) + d] = w;
    }
    return ControlPolygon(d + 1, std::move(flat));
}

} // namespace detail

/// Left segment of a rational curve: one fast subdivision of the weight
/// sequence gives the new weights nu_k, d fast subdivisions of the
/// weighted coordinates give the numerators, and each output point is
/// divided by its nu_k once, last. All d+1 scalar passes share the plan
/// through one lifted subdivision.
///
/// A bitwise-constant weight vector makes the curve polynomial; that case
/// is recognized and returns the polynomial subdivision with the weights
/// carried through unchanged.
inline RationalControlPolygon subdivide_left_rational(const SubdivisionPlan& plan,
                                                      const RationalControlPolygon& rational) {
    plan.require_degree(rational.polygon());
    const std::size_t n = rational.degree();
    const std::size_t d = rational.dimension();
    const auto& weights = rational.weights();

    const bool uniform =
        std::all_of(weights.begin(), weights.end(), [&](double w) { return w == weights[0]; });
    if (uniform) {
        return {subdivide_left_fft(plan, rational.polygon()), weights};
    }

    const ControlPolygon lifted_left = subdivide_left_fft(plan, detail::lift(rational));

    std::vector<double> nu(n + 1);
    std::vector<double> points((n + 1) * d);
    for (std::size_t k = 0; k <= n; ++k) {
        const double nu_k = lifted_left.coord(k, d);
        if (!(nu_k > 0.0) || !std::isfinite(nu_k)) {
            throw std::runtime_error(
                "subdivide_left_rational: degenerate computed weight (catastrophic cancellation)");
        }
        nu[k] = nu_k;
        for (std::size_t axis = 0; axis < d; ++axis) {
            points[k * d + axis] = lifted_left.coord(k, axis) / nu_k;
        }
    }
    return {ControlPolygon(d, std::move(points)), std::move(nu)};
}

/// Point on the rational curve at t, by the weighted de Casteljau
/// recurrence applied to the projective lift.
inline Point evaluate_rational(const RationalControlPolygon& rational, double t) {
    const Point lifted = evaluate(detail::lift(rational), t);
    const std::size_t d = rational.dimension();
    const double denom = lifted[d];
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw std::runtime_error("evaluate_rational: degenerate weight denominator");
    }
    Point out(d);
    for (std::size_t axis = 0; axis < d; ++axis) {
        out[axis] = lifted[axis] / denom;
    }
    return out;
}

} // namespace bezsub

#endif // BEZSUB_RATIONAL_HPP
