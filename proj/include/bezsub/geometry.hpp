#ifndef BEZSUB_GEOMETRY_HPP
#define BEZSUB_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bezsub {

/// A point in E^d, returned by evaluation routines.
using Point = std::vector<double>;

/// Control polygon of a polynomial Bezier curve of degree n in E^d.
///
/// Stores the n+1 control points in a single flat buffer, point-major:
/// coordinate j of point i sits at coords()[i * dimension() + j]. All
/// coordinates must be finite; instances are immutable after construction.
class ControlPolygon {
public:
    ControlPolygon(std::size_t dimension, std::vector<double> coords)
        : dim_(dimension), coords_(std::move(coords)) {
        if (dim_ == 0) {
            throw std::invalid_argument("ControlPolygon: dimension must be >= 1");
        }
        if (coords_.empty() || coords_.size() % dim_ != 0) {
            throw std::invalid_argument(
                "ControlPolygon: coordinate count must be a positive multiple of the dimension");
        }
        for (double v : coords_) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("ControlPolygon: coordinates must be finite");
            }
        }
    }

    /// 1-D curve from scalar control points.
    static ControlPolygon scalar(std::vector<double> values) {
        return ControlPolygon(1, std::move(values));
    }

    /// Convenience for tests and small examples: one inner list per point.
    static ControlPolygon from_points(std::initializer_list<std::initializer_list<double>> pts) {
        if (pts.size() == 0) {
            throw std::invalid_argument("ControlPolygon: at least one point required");
        }
        const std::size_t d = pts.begin()->size();
        std::vector<double> flat;
        flat.reserve(pts.size() * d);
        for (const auto& p : pts) {
            if (p.size() != d) {
                throw std::invalid_argument("ControlPolygon: points must share one dimension");
            }
            flat.insert(flat.end(), p.begin(), p.end());
        }
        return ControlPolygon(d, std::move(flat));
    }

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t point_count() const noexcept { return coords_.size() / dim_; }
    std::size_t degree() const noexcept { return point_count() - 1; }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }

    double coord(std::size_t i, std::size_t axis) const { return coords_[i * dim_ + axis]; }

    const std::vector<double>& coords() const noexcept { return coords_; }

    /// Gathers the scalar slice of one axis into out (size point_count()).
    void component(std::size_t axis, std::span<double> out) const {
        const std::size_t n1 = point_count();
        for (std::size_t i = 0; i < n1; ++i) {
            out[i] = coords_[i * dim_ + axis];
        }
    }

    ControlPolygon reversed() const {
        const std::size_t n1 = point_count();
        std::vector<double> flat(coords_.size());
        for (std::size_t i = 0; i < n1; ++i) {
            std::copy_n(coords_.data() + i * dim_, dim_, flat.data() + (n1 - 1 - i) * dim_);
        }
        return ControlPolygon(dim_, std::move(flat));
    }

    bool operator==(const ControlPolygon& other) const = default;

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// Result of splitting a curve at parameter c: the two segments share the
/// split point (left.point(n) == right.point(0) for the exact oracle).
struct SubdivisionOutcome {
    ControlPolygon left;
    ControlPolygon right;
    double split_parameter;
};

/// Control points plus strictly positive weights of a rational Bezier curve.
class RationalControlPolygon {
public:
    RationalControlPolygon(ControlPolygon polygon, std::vector<double> weights)
        : polygon_(std::move(polygon)), weights_(std::move(weights)) {
        if (weights_.size() != polygon_.point_count()) {
            throw std::invalid_argument(
                "RationalControlPolygon: weight count must equal point count");
        }
        for (double w : weights_) {
            if (!(w > 0.0) || !std::isfinite(w)) {
                throw std::domain_error(
                    "RationalControlPolygon: weights must be finite and > 0");
            }
        }
    }

    const ControlPolygon& polygon() const noexcept { return polygon_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    std::size_t dimension() const noexcept { return polygon_.dimension(); }
    std::size_t degree() const noexcept { return polygon_.degree(); }

private:
    ControlPolygon polygon_;
    std::vector<double> weights_;
};

/// Rectangular tensor-product Bezier patch of degree (n, m) in E^d.
///
/// The (n+1) x (m+1) grid of control points is stored row-major and
/// point-major: coordinate a of the point with row index i and column
/// index j sits at coords()[(i * cols() + j) * dimension() + a].
class TensorPatch {
public:
    TensorPatch(std::size_t dimension, std::size_t rows, std::size_t cols,
                std::vector<double> coords)
        : dim_(dimension), rows_(rows), cols_(cols), coords_(std::move(coords)) {
        if (dim_ == 0 || rows_ == 0 || cols_ == 0) {
            throw std::invalid_argument("TensorPatch: empty grid or zero dimension");
        }
        if (coords_.size() != rows_ * cols_ * dim_) {
            throw std::invalid_argument("TensorPatch: coordinate count does not match grid");
        }
        for (double v : coords_) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("TensorPatch: coordinates must be finite");
            }
        }
    }

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t row_degree() const noexcept { return rows_ - 1; }
    std::size_t col_degree() const noexcept { return cols_ - 1; }

    std::span<const double> point(std::size_t i, std::size_t j) const {
        return {coords_.data() + (i * cols_ + j) * dim_, dim_};
    }

    const std::vector<double>& coords() const noexcept { return coords_; }

    /// Column j as a curve of degree row_degree() (varying row index).
    ControlPolygon column(std::size_t j) const {
        std::vector<double> flat(rows_ * dim_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::copy_n(coords_.data() + (i * cols_ + j) * dim_, dim_,
                        flat.data() + i * dim_);
        }
        return ControlPolygon(dim_, std::move(flat));
    }

    /// Row i as a curve of degree col_degree() (varying column index).
    ControlPolygon row(std::size_t i) const {
        std::vector<double> flat(coords_.data() + i * cols_ * dim_,
                                 coords_.data() + (i + 1) * cols_ * dim_);
        return ControlPolygon(dim_, std::move(flat));
    }

    TensorPatch transposed() const {
        std::vector<double> flat(coords_.size());
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                std::copy_n(coords_.data() + (i * cols_ + j) * dim_, dim_,
                            flat.data() + (j * rows_ + i) * dim_);
            }
        }
        return TensorPatch(dim_, cols_, rows_, std::move(flat));
    }

    bool operator==(const TensorPatch& other) const = default;

private:
    std::size_t dim_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> coords_;
};

} // namespace bezsub

#endif // BEZSUB_GEOMETRY_HPP
