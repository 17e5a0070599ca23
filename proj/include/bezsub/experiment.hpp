#ifndef BEZSUB_EXPERIMENT_HPP
#define BEZSUB_EXPERIMENT_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bezsub/decasteljau.hpp"
#include "bezsub/fastsub.hpp"
#include "bezsub/geometry.hpp"

namespace bezsub {

/// Deterministic, portable uniform generator: mt19937_64 (whose output
/// sequence is fixed by the standard) with an explicit 53-bit mapping to
/// doubles, so identical seeds reproduce identical curves everywhere.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    std::uint64_t uniform_index(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
};

namespace detail {

inline std::uint64_t splitmix_round(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

/// Independent stream per (seed, degree, purpose), so reordering the
/// degree list does not perturb the draws of other degrees.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t degree,
                                 std::uint64_t purpose) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ull;
    x = splitmix_round(x + degree);
    x = splitmix_round(x + purpose);
    return x;
}

constexpr std::uint64_t kCurveStream = 0;
constexpr std::uint64_t kSplitStream = 1;

} // namespace detail

/// Parameters of the random-curve protocol shared by the accuracy and
/// timing runs.
struct ExperimentConfig {
    std::vector<std::size_t> degrees = default_degrees();
    std::size_t curves_per_degree = 1000;
    /// Number of split points; 499 selects the full grid t_i = i/500,
    /// anything else samples that grid through the seeded generator.
    std::size_t split_points = 499;
    std::size_t dimension = 2;
    double coord_min = 1.0;
    double coord_max = 2.0;
    std::uint64_t seed = 1;
    /// Empty: s = default_scale(n) per degree. Set: fixed s for all n.
    std::optional<double> fixed_scale;
    std::vector<Method> methods = {Method::decasteljau, Method::fft, Method::direct};

    static std::vector<std::size_t> default_degrees() {
        std::vector<std::size_t> ds;
        for (std::size_t n = 2; n <= 20; ++n) ds.push_back(n);
        for (std::size_t n = 25; n <= 50; n += 5) ds.push_back(n);
        ds.push_back(60);
        ds.push_back(70);
        return ds;
    }

    double scale_for(std::size_t degree) const {
        return fixed_scale ? *fixed_scale : default_scale(degree);
    }

    void validate() const {
        if (degrees.empty()) throw std::invalid_argument("config: no degrees");
        for (std::size_t n : degrees) {
            if (n < 1) throw std::invalid_argument("config: degrees must be >= 1");
        }
        if (dimension == 0) throw std::invalid_argument("config: dimension must be >= 1");
        if (split_points == 0) throw std::invalid_argument("config: need at least one split");
        if (!(coord_min < coord_max) || !std::isfinite(coord_min) || !std::isfinite(coord_max)) {
            throw std::invalid_argument("config: bad coordinate range");
        }
    }
};

/// Curves for one degree; coordinates drawn point by point, axis by axis.
inline std::vector<ControlPolygon> generate_curves(const ExperimentConfig& config,
                                                   std::size_t degree) {
    config.validate();
    PortableRng rng(detail::derive_seed(config.seed, degree, detail::kCurveStream));
    std::vector<ControlPolygon> curves;
    curves.reserve(config.curves_per_degree);
    for (std::size_t c = 0; c < config.curves_per_degree; ++c) {
        std::vector<double> coords((degree + 1) * config.dimension);
        for (double& v : coords) {
            v = rng.uniform(config.coord_min, config.coord_max);
        }
        curves.emplace_back(config.dimension, std::move(coords));
    }
    return curves;
}

namespace detail {

inline std::vector<double> draw_splits(std::size_t count, PortableRng& rng) {
    std::vector<double> splits;
    splits.reserve(count);
    if (count == 499) {
        for (std::size_t i = 1; i <= 499; ++i) {
            splits.push_back(static_cast<double>(i) / 500.0);
        }
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            const std::uint64_t i = 1 + rng.uniform_index(499);
            splits.push_back(static_cast<double>(i) / 500.0);
        }
    }
    return splits;
}

} // namespace detail

/// Correct-decimal-digit count of computed against exact. Equal values
/// score the cap of 17; otherwise -log10 of the relative error (absolute
/// error when exact is zero), clamped to [0, 17]. The cap is one digit
/// above double precision, a reporting convention rather than a claim.
inline double digits_of_accuracy(double exact, double computed) {
    if (computed == exact) return 17.0;
    if (!std::isfinite(computed)) return 0.0;
    const double err = std::abs(computed - exact);
    const double rel = (exact != 0.0) ? err / std::abs(exact) : err;
    const double digits = -std::log10(rel);
    if (!(digits > 0.0)) return 0.0;
    return std::min(digits, 17.0);
}

struct AccuracyRow {
    std::size_t degree;
    Method method;
    double min_digits;
    double mean_digits;
    std::size_t error_count;
};

struct AccuracyReport {
    std::vector<AccuracyRow> rows;
};

enum class PlanMode { per_call, amortized };

struct TimingRow {
    std::size_t degree;
    Method method;
    PlanMode mode;
    double total_seconds;
};

struct TimingReport {
    std::vector<TimingRow> rows;
};

inline std::string_view method_name(Method m) {
    switch (m) {
    case Method::decasteljau: return "decasteljau";
    case Method::fft: return "fft";
    case Method::direct: return "direct";
    case Method::unscaled: return "unscaled";
    }
    return "?";
}

inline Method parse_method(std::string_view name) {
    if (name == "decasteljau") return Method::decasteljau;
    if (name == "fft") return Method::fft;
    if (name == "direct") return Method::direct;
    if (name == "unscaled") return Method::unscaled;
    throw std::invalid_argument("unknown method: " + std::string(name));
}

inline std::string_view plan_mode_name(PlanMode m) {
    return m == PlanMode::per_call ? "per_call" : "amortized";
}

namespace detail {

inline ControlPolygon run_method_left(Method method, const ControlPolygon& curve, double c,
                                      double scale) {
    switch (method) {
    case Method::decasteljau:
        return subdivide(curve, c).left;
    case Method::fft: {
        const SubdivisionPlan plan(curve.degree(), c, scale);
        return subdivide_left_fft(plan, curve);
    }
    case Method::direct: {
        const SubdivisionPlan plan = SubdivisionPlan::without_spectrum(curve.degree(), c, scale);
        return subdivide_left_direct(plan, curve);
    }
    case Method::unscaled:
        return subdivide_left_unscaled(curve, c);
    }
    throw std::invalid_argument("run_method_left: unknown method");
}

} // namespace detail

/// Runs the digits-of-accuracy protocol: for every curve and split, each
/// method's left segment is compared coordinate by coordinate against
/// the de Casteljau result taken as exact. Per-case failures increment
/// the error count instead of aborting the run.
inline AccuracyReport run_accuracy(const ExperimentConfig& config) {
    config.validate();
    AccuracyReport report;
    for (const std::size_t degree : config.degrees) {
        const std::vector<ControlPolygon> curves = generate_curves(config, degree);
        PortableRng split_rng(
            detail::derive_seed(config.seed, degree, detail::kSplitStream));
        std::vector<std::vector<double>> splits_per_curve;
        splits_per_curve.reserve(curves.size());
        for (std::size_t i = 0; i < curves.size(); ++i) {
            splits_per_curve.push_back(detail::draw_splits(config.split_points, split_rng));
        }
        const double scale = config.scale_for(degree);

        for (const Method method : config.methods) {
            double min_digits = 17.0;
            double sum_digits = 0.0;
            std::size_t count = 0;
            std::size_t errors = 0;

            for (std::size_t ci = 0; ci < curves.size(); ++ci) {
                const ControlPolygon& curve = curves[ci];
                for (const double c : splits_per_curve[ci]) {
                    const ControlPolygon exact = subdivide(curve, c).left;
                    try {
                        const ControlPolygon computed =
                            detail::run_method_left(method, curve, c, scale);
                        for (std::size_t k = 0; k < exact.coords().size(); ++k) {
                            const double digits =
                                digits_of_accuracy(exact.coords()[k], computed.coords()[k]);
                            min_digits = std::min(min_digits, digits);
                            sum_digits += digits;
                            ++count;
                        }
                    } catch (const std::exception&) {
                        ++errors;
                    }
                }
            }
            const double mean = (count > 0) ? sum_digits / static_cast<double>(count) : 0.0;
            report.rows.push_back(
                {degree, method, count > 0 ? min_digits : 0.0, mean, errors});
        }
    }
    return report;
}

/// Times each method over identical inputs, single threaded. per_call
/// rebuilds the subdivision plan for every subdivision; amortized builds
/// it once per split point and reuses it across curves. A short warm-up
/// pass runs before each measurement and is excluded from the totals.
inline TimingReport run_bench(const ExperimentConfig& config) {
    config.validate();
    using clock = std::chrono::steady_clock;
    TimingReport report;

    for (const std::size_t degree : config.degrees) {
        const std::vector<ControlPolygon> curves = generate_curves(config, degree);
        PortableRng split_rng(
            detail::derive_seed(config.seed, degree, detail::kSplitStream));
        const std::vector<double> splits = detail::draw_splits(config.split_points, split_rng);
        const double scale = config.scale_for(degree);
        double sink = 0.0;

        for (const Method method : config.methods) {
            for (const PlanMode mode : {PlanMode::per_call, PlanMode::amortized}) {
                const std::size_t warm_curves = std::min<std::size_t>(curves.size(), 5);
                const std::size_t warm_splits = std::min<std::size_t>(splits.size(), 5);
                for (std::size_t ci = 0; ci < warm_curves; ++ci) {
                    for (std::size_t si = 0; si < warm_splits; ++si) {
                        sink +=
                            detail::run_method_left(method, curves[ci], splits[si], scale)
                                .coord(0, 0);
                    }
                }

                const auto start = clock::now();
                if (method == Method::decasteljau || method == Method::unscaled ||
                    mode == PlanMode::per_call) {
                    for (const ControlPolygon& curve : curves) {
                        for (const double c : splits) {
                            sink += detail::run_method_left(method, curve, c, scale)
                                        .coord(0, 0);
                        }
                    }
                } else {
                    for (const double c : splits) {
                        const SubdivisionPlan plan =
                            (method == Method::fft)
                                ? SubdivisionPlan(degree, c, scale)
                                : SubdivisionPlan::without_spectrum(degree, c, scale);
                        for (const ControlPolygon& curve : curves) {
                            sink += (method == Method::fft)
                                        ? subdivide_left_fft(plan, curve).coord(0, 0)
                                        : subdivide_left_direct(plan, curve).coord(0, 0);
                        }
                    }
                }
                const std::chrono::duration<double> elapsed = clock::now() - start;
                report.rows.push_back({degree, method, mode, elapsed.count()});
            }
        }
        // Keep the accumulated outputs observable so the loops stay live.
        volatile double keep = sink;
        (void)keep;
    }
    return report;
}

// ---- report writers ----------------------------------------------------

inline void write_accuracy_csv(const AccuracyReport& report, std::ostream& os) {
    os << "degree,method,min_digits,mean_digits,error_count\n";
    char buf[64];
    for (const AccuracyRow& row : report.rows) {
        os << row.degree << ',' << method_name(row.method) << ',';
        std::snprintf(buf, sizeof buf, "%.6g", row.min_digits);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.6g", row.mean_digits);
        os << buf << ',' << row.error_count << '\n';
    }
}

inline void write_bench_csv(const TimingReport& report, std::ostream& os) {
    os << "degree,method,mode,total_seconds\n";
    char buf[64];
    for (const TimingRow& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%.6f", row.total_seconds);
        os << row.degree << ',' << method_name(row.method) << ','
           << plan_mode_name(row.mode) << ',' << buf << '\n';
    }
}

/// Markdown table of per-call totals, one column per method.
inline void write_bench_markdown(const TimingReport& report, std::ostream& os) {
    std::vector<std::size_t> degrees;
    std::vector<Method> methods;
    for (const TimingRow& row : report.rows) {
        if (row.mode != PlanMode::per_call) continue;
        if (std::find(degrees.begin(), degrees.end(), row.degree) == degrees.end()) {
            degrees.push_back(row.degree);
        }
        if (std::find(methods.begin(), methods.end(), row.method) == methods.end()) {
            methods.push_back(row.method);
        }
    }
    os << "| n |";
    for (Method m : methods) os << ' ' << method_name(m) << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < methods.size(); ++i) os << "---|";
    os << '\n';
    char buf[64];
    for (const std::size_t degree : degrees) {
        os << "| " << degree << " |";
        for (Method m : methods) {
            for (const TimingRow& row : report.rows) {
                if (row.degree == degree && row.method == m && row.mode == PlanMode::per_call) {
                    std::snprintf(buf, sizeof buf, "%.2f", row.total_seconds);
                    os << ' ' << buf << " |";
                    break;
                }
            }
        }
        os << '\n';
    }
}

} // namespace bezsub

#endif // BEZSUB_EXPERIMENT_HPP
