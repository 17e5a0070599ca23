#ifndef BEZSUB_DECASTELJAU_HPP
#define BEZSUB_DECASTELJAU_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "bezsub/geometry.hpp"

namespace bezsub {

/// The full triangular array of the de Casteljau recurrence at a fixed
/// parameter c. Level k holds the n-k+1 points W^(k)_i; level 0 is the
/// input polygon and level n is the single point P(c). Levels live
/// back-to-back in one flat buffer.
class DeCasteljauTable {
public:
    DeCasteljauTable(std::size_t dimension, std::size_t degree, std::vector<double> flat)
        : dim_(dimension), degree_(degree), flat_(std::move(flat)) {}

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t degree() const noexcept { return degree_; }
    std::size_t level_count() const noexcept { return degree_ + 1; }
    std::size_t level_size(std::size_t k) const noexcept { return degree_ - k + 1; }

    /// Point W^(k)_i.
    std::span<const double> point(std::size_t k, std::size_t i) const {
        return {flat_.data() + (level_offset(k) + i) * dim_, dim_};
    }

    const std::vector<double>& flat() const noexcept { return flat_; }

private:
    // Levels 0..k-1 hold (n+1) + n + ... + (n-k+2) points.
    std::size_t level_offset(std::size_t k) const noexcept {
        return k * (degree_ + 1) - k * (k - 1) / 2;
    }

    std::size_t dim_;
    std::size_t degree_;
    std::vector<double> flat_;
};

namespace detail {

inline void require_unit_interval(double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::domain_error("parameter must lie in [0, 1]");
    }
}

inline ControlPolygon repeated_point(std::span<const double> p, std::size_t count,
                                     std::size_t dim) {
    std::vector<double> flat(count * dim);
    for (std::size_t i = 0; i < count; ++i) {
        std::copy_n(p.data(), dim, flat.data() + i * dim);
    }
    return ControlPolygon(dim, std::move(flat));
}

} // namespace detail

/// Evaluates P(c) by the de Casteljau recurrence in O(d n^2).
inline Point evaluate(const ControlPolygon& polygon, double c) {
    detail::require_unit_interval(c);
    const std::size_t d = polygon.dimension();
    const std::size_t n = polygon.degree();
    std::vector<double> work(polygon.coords());
    const double u = 1.0 - c;
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t len = (n - k + 1) * d;
        for (std::size_t j = 0; j < len; ++j) {
            work[j] = u * work[j] + c * work[j + d];
        }
    }
    work.resize(d);
    return work;
}

/// Builds the full de Casteljau table at c.
inline DeCasteljauTable build_table(const ControlPolygon& polygon, double c) {
    detail::require_unit_interval(c);
    const std::size_t d = polygon.dimension();
    const std::size_t n = polygon.degree();
    const std::size_t total_points = (n + 1) * (n + 2) / 2;
    std::vector<double> flat(total_points * d);
    std::copy(polygon.coords().begin(), polygon.coords().end(), flat.begin());

    const double u = 1.0 - c;
    std::size_t prev = 0;
    std::size_t cur = (n + 1) * d;
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t len = (n - k + 1) * d;
        for (std::size_t j = 0; j < len; ++j) {
            flat[cur + j] = u * flat[prev + j] + c * flat[prev + j + d];
        }
        prev = cur;
        cur += len;
    }
    return DeCasteljauTable(d, n, std::move(flat));
}

/// Splits the curve at c. The left segment is the table diagonal
/// W^(0)_0, W^(1)_0, ..., W^(n)_0 and the right segment is the bottom
/// row W^(n)_0, W^(n-1)_1, ..., W^(0)_n. The endpoints c = 0 and c = 1
/// short-circuit to their closed forms.
inline SubdivisionOutcome subdivide(const ControlPolygon& polygon, double c) {
    detail::require_unit_interval(c);
    const std::size_t d = polygon.dimension();
    const std::size_t n = polygon.degree();

    if (c == 0.0) {
        return {detail::repeated_point(polygon.point(0), n + 1, d), polygon, c};
    }
    if (c == 1.0) {
        return {polygon, detail::repeated_point(polygon.point(n), n + 1, d), c};
    }

    const DeCasteljauTable table = build_table(polygon, c);
    std::vector<double> left((n + 1) * d);
    std::vector<double> right((n + 1) * d);
    for (std::size_t k = 0; k <= n; ++k) {
        const auto diag = table.point(k, 0);
        std::copy_n(diag.data(), d, left.data() + k * d);
        const auto bottom = table.point(n - k, k);
        std::copy_n(bottom.data(), d, right.data() + k * d);
    }
    return {ControlPolygon(d, std::move(left)), ControlPolygon(d, std::move(right)), c};
}

} // namespace bezsub

#endif // BEZSUB_DECASTELJAU_HPP
