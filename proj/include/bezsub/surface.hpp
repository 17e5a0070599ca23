#ifndef BEZSUB_SURFACE_HPP
#define BEZSUB_SURFACE_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bezsub/decasteljau.hpp"
#include "bezsub/fastsub.hpp"
#include "bezsub/geometry.hpp"

namespace bezsub {

/// Left part S([0,c],[0,1]) of a tensor-product patch: each of the m+1
/// columns is subdivided as a curve along the row index, all sharing the
/// plan (and so one beta spectrum) regardless of m and d. Splitting
/// along the second parameter is the same operation on the transposed
/// grid. O(d m n log n).
inline TensorPatch subdivide_patch_left(const SubdivisionPlan& plan, const TensorPatch& patch) {
    if (patch.row_degree() != plan.degree()) {
        throw std::invalid_argument("subdivide_patch_left: patch row degree does not match plan");
    }
    const std::size_t d = patch.dimension();
    const std::size_t rows = patch.rows();
    const std::size_t cols = patch.cols();

    std::vector<double> out(rows * cols * d);
    for (std::size_t j = 0; j < cols; ++j) {
        const ControlPolygon left = subdivide_left_fft(plan, patch.column(j));
        for (std::size_t i = 0; i < rows; ++i) {
            std::copy_n(left.point(i).data(), d, out.data() + (i * cols + j) * d);
        }
    }
    return TensorPatch(d, rows, cols, std::move(out));
}

/// Point S(t, u) by nested de Casteljau: collapse each row at u, then
/// collapse the resulting column at t.
inline Point evaluate_patch(const TensorPatch& patch, double t, double u) {
    const std::size_t d = patch.dimension();
    const std::size_t rows = patch.rows();
    std::vector<double> column(rows * d);
    for (std::size_t i = 0; i < rows; ++i) {
        const Point p = evaluate(patch.row(i), u);
        std::copy_n(p.data(), d, column.data() + i * d);
    }
    return evaluate(ControlPolygon(d, std::move(column)), t);
}

} // namespace bezsub

#endif // BEZSUB_SURFACE_HPP
