#ifndef BEZSUB_CURVE_IO_HPP
#define BEZSUB_CURVE_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bezsub/decasteljau.hpp"
#include "bezsub/fastsub.hpp"
#include "bezsub/geometry.hpp"
#include "bezsub/rational.hpp"

namespace bezsub {

/// One curve as read from or written to a file: a polygon plus optional
/// weights (present iff the curve is rational).
struct CurveRecord {
    ControlPolygon polygon;
    std::optional<std::vector<double>> weights;
};

// Exit codes of the file-level operations (also used by the CLI).
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitDomainError = 3;
inline constexpr int kExitNumericError = 4;

namespace io_detail {

inline std::vector<double> flatten_points(const nlohmann::json& points, std::size_t dim) {
    std::vector<double> flat;
    flat.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (!p.is_array() || p.size() != dim) {
            throw std::invalid_argument("curve file: point arity does not match dimension");
        }
        for (const auto& v : p) {
            flat.push_back(v.get<double>());
        }
    }
    return flat;
}

} // namespace io_detail

/// Parses one curve object: {"dimension": d, "points": [[...], ...]}
/// with an optional "weights" array. Throws std::invalid_argument or a
/// json exception on malformed input.
inline CurveRecord parse_curve_line(const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    if (!j.is_object() || !j.contains("dimension") || !j.contains("points")) {
        throw std::invalid_argument("curve file: expected dimension and points fields");
    }
    const auto dim = j.at("dimension").get<std::size_t>();
    if (dim == 0) throw std::invalid_argument("curve file: dimension must be >= 1");
    ControlPolygon polygon(dim, io_detail::flatten_points(j.at("points"), dim));

    std::optional<std::vector<double>> weights;
    if (j.contains("weights")) {
        weights = j.at("weights").get<std::vector<double>>();
        // Validates counts and positivity.
        RationalControlPolygon check(polygon, *weights);
    }
    return {std::move(polygon), std::move(weights)};
}

inline std::string format_curve_line(const CurveRecord& record) {
    nlohmann::json j;
    j["dimension"] = record.polygon.dimension();
    auto points = nlohmann::json::array();
    for (std::size_t i = 0; i < record.polygon.point_count(); ++i) {
        auto p = nlohmann::json::array();
        for (std::size_t a = 0; a < record.polygon.dimension(); ++a) {
            p.push_back(record.polygon.coord(i, a));
        }
        points.push_back(std::move(p));
    }
    j["points"] = std::move(points);
    if (record.weights) {
        j["weights"] = *record.weights;
    }
    return j.dump();
}

/// Parses one patch object: {"dimension": d, "grid": [[[...], ...], ...]}
/// (rows of points).
inline TensorPatch parse_patch_line(const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    if (!j.is_object() || !j.contains("dimension") || !j.contains("grid")) {
        throw std::invalid_argument("patch file: expected dimension and grid fields");
    }
    const auto dim = j.at("dimension").get<std::size_t>();
    if (dim == 0) throw std::invalid_argument("patch file: dimension must be >= 1");
    const auto& grid = j.at("grid");
    if (!grid.is_array() || grid.empty()) {
        throw std::invalid_argument("patch file: grid must be a non-empty array of rows");
    }
    const std::size_t rows = grid.size();
    const std::size_t cols = grid.front().size();
    std::vector<double> flat;
    flat.reserve(rows * cols * dim);
    for (const auto& row : grid) {
        if (!row.is_array() || row.size() != cols) {
            throw std::invalid_argument("patch file: ragged grid");
        }
        const std::vector<double> row_flat = io_detail::flatten_points(row, dim);
        flat.insert(flat.end(), row_flat.begin(), row_flat.end());
    }
    return TensorPatch(dim, rows, cols, std::move(flat));
}

inline std::string format_patch_line(const TensorPatch& patch) {
    nlohmann::json j;
    j["dimension"] = patch.dimension();
    auto grid = nlohmann::json::array();
    for (std::size_t i = 0; i < patch.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t jcol = 0; jcol < patch.cols(); ++jcol) {
            auto p = nlohmann::json::array();
            for (std::size_t a = 0; a < patch.dimension(); ++a) {
                p.push_back(patch.point(i, jcol)[a]);
            }
            row.push_back(std::move(p));
        }
        grid.push_back(std::move(row));
    }
    j["grid"] = std::move(grid);
    return j.dump();
}

namespace io_detail {

inline RationalControlPolygon project(const ControlPolygon& lifted) {
    const std::size_t d = lifted.dimension() - 1;
    const std::size_t n1 = lifted.point_count();
    std::vector<double> points(n1 * d);
    std::vector<double> weights(n1);
    for (std::size_t i = 0; i < n1; ++i) {
        const double w = lifted.coord(i, d);
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw std::runtime_error("rational subdivision produced a degenerate weight");
        }
        weights[i] = w;
        for (std::size_t a = 0; a < d; ++a) {
            points[i * d + a] = lifted.coord(i, a) / w;
        }
    }
    return {ControlPolygon(d, std::move(points)), std::move(weights)};
}

inline std::pair<CurveRecord, CurveRecord> split_record(const CurveRecord& record, double c,
                                                        std::optional<double> scale,
                                                        Method method) {
    if (!record.weights) {
        const ControlPolygon& poly = record.polygon;
        switch (method) {
        case Method::decasteljau: {
            SubdivisionOutcome outcome = subdivide(poly, c);
            return {{std::move(outcome.left), {}}, {std::move(outcome.right), {}}};
        }
        case Method::fft: {
            const SubdivisionPlan plan(poly.degree(), c, scale);
            return {{subdivide_left_fft(plan, poly), {}},
                    {subdivide_right(poly, c, Method::fft, scale), {}}};
        }
        case Method::direct: {
            const SubdivisionPlan plan =
                SubdivisionPlan::without_spectrum(poly.degree(), c, scale);
            return {{subdivide_left_direct(plan, poly), {}},
                    {subdivide_right(poly, c, Method::direct, scale), {}}};
        }
        case Method::unscaled:
            return {{subdivide_left_unscaled(poly, c), {}},
                    {subdivide_right(poly, c, Method::unscaled), {}}};
        }
        throw std::invalid_argument("unknown method");
    }

    const RationalControlPolygon rational(record.polygon, *record.weights);
    if (method == Method::decasteljau) {
        SubdivisionOutcome lifted = subdivide(detail::lift(rational), c);
        RationalControlPolygon left = project(lifted.left);
        RationalControlPolygon right = project(lifted.right);
        return {{left.polygon(), left.weights()}, {right.polygon(), right.weights()}};
    }
    if (method != Method::fft) {
        throw std::domain_error("rational subdivision supports methods decasteljau and fft");
    }
    const SubdivisionPlan plan(rational.degree(), c, scale);
    RationalControlPolygon left = subdivide_left_rational(plan, rational);

    // Right rational segment: reverse points and weights, take the left
    // segment at 1-c, reverse back.
    const std::size_t n1 = rational.polygon().point_count();
    std::vector<double> rev_w(rational.weights().rbegin(), rational.weights().rend());
    const RationalControlPolygon reversed(rational.polygon().reversed(), std::move(rev_w));
    const SubdivisionPlan complement(rational.degree(), 1.0 - c, scale);
    RationalControlPolygon rev_left = subdivide_left_rational(complement, reversed);
    std::vector<double> right_w(n1);
    for (std::size_t i = 0; i < n1; ++i) right_w[i] = rev_left.weights()[n1 - 1 - i];
    RationalControlPolygon right(rev_left.polygon().reversed(), std::move(right_w));

    return {{left.polygon(), left.weights()}, {right.polygon(), right.weights()}};
}

} // namespace io_detail

/// Reads curves line by line, splits each one at c with the requested
/// method, and writes the left then the right segment per input curve.
/// Returns a process exit status: 0 success, 2 parse error, 3 domain
/// error, 4 numeric failure.
inline int subdivide_file(const std::string& input_path, double c, std::optional<double> scale,
                          Method method, const std::string& output_path,
                          std::string* error_message = nullptr) {
    const auto fail = [&](int code, const std::string& message) {
        if (error_message != nullptr) *error_message = message;
        return code;
    };

    std::ifstream in(input_path);
    if (!in) return fail(kExitParseError, "cannot open input file: " + input_path);

    std::vector<CurveRecord> inputs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            inputs.push_back(parse_curve_line(line));
        } catch (const std::exception& e) {
            return fail(kExitParseError,
                        "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (inputs.empty()) return fail(kExitParseError, "no curves in input file");

    std::ostringstream out;
    for (const CurveRecord& record : inputs) {
        try {
            const auto [left, right] = io_detail::split_record(record, c, scale, method);
            out << format_curve_line(left) << '\n' << format_curve_line(right) << '\n';
        } catch (const std::domain_error& e) {
            return fail(kExitDomainError, e.what());
        } catch (const std::exception& e) {
            return fail(kExitNumericError, e.what());
        }
    }

    std::ofstream os(output_path);
    if (!os) return fail(kExitNumericError, "cannot open output file: " + output_path);
    os << out.str();
    return kExitOk;
}

} // namespace bezsub

#endif // BEZSUB_CURVE_IO_HPP
