#ifndef BEZSUB_FASTSUB_HPP
#define BEZSUB_FASTSUB_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bezsub/geometry.hpp"
#include "bezsub/instrumentation.hpp"
#include "bezsub/transform.hpp"

namespace bezsub {

/// Scaling factor s(n) = 0.375 n + 0.9 used by default.
inline double default_scale(std::size_t degree) {
    return 0.375 * static_cast<double>(degree) + 0.9;
}

enum class Method { decasteljau, fft, direct, unscaled };

/// Precomputed state for subdividing degree-n curves at a fixed split c
/// with a fixed scaling factor s. A plan is immutable, is reusable across
/// any number of polygons and dimensions, and computes the spectrum of
/// the scaled (1-c)-power sequence exactly once.
///
/// All per-index factors are running products; factorials and bare powers
/// of s are never formed:
///   alpha prefactors  a_i = a_{i-1} s c / i        (a_0 = 1)
///   beta coefficients b_j = b_{j-1} s (1-c) / j    (b_0 = 1)
///   rescale factors   f_k = f_{k-1} k / s          (f_0 = 1)
///
/// The transform length is 2n rather than the full product length 2n+1:
/// the only cyclic wraparound then lands on coefficient 0, which is never
/// taken from the transform (v_0 = w_0 identically, and the retained tail
/// recovers gamma_2n as alpha_n beta_n directly). At power-of-two degrees
/// this halves the padded transform size.
class SubdivisionPlan {
public:
    SubdivisionPlan(std::size_t degree, double split, std::optional<double> scale = {})
        : SubdivisionPlan(degree, split, scale, true) {}

    /// Plan without the spectrum; usable only with the direct method.
    static SubdivisionPlan without_spectrum(std::size_t degree, double split,
                                            std::optional<double> scale = {}) {
        return SubdivisionPlan(degree, split, scale, false);
    }

    std::size_t degree() const noexcept { return degree_; }
    double split() const noexcept { return split_; }
    double scale() const noexcept { return scale_; }

    const std::vector<double>& alpha_prefactors() const noexcept { return alpha_; }
    const std::vector<double>& beta_coefficients() const noexcept { return beta_; }
    const std::vector<double>& rescale_factors() const noexcept { return rescale_; }

    const TransformPlan& transform() const noexcept { return transform_; }

    const Spectrum& beta_spectrum() const {
        if (beta_spectrum_.re.empty()) {
            throw std::logic_error("SubdivisionPlan: built without a beta spectrum");
        }
        return beta_spectrum_;
    }

    void require_degree(const ControlPolygon& polygon) const {
        if (polygon.degree() != degree_) {
            throw std::invalid_argument("polygon degree does not match the plan");
        }
    }

private:
    SubdivisionPlan(std::size_t degree, double split, std::optional<double> scale,
                    bool with_spectrum)
        : degree_(degree),
          split_(split),
          scale_(scale.value_or(default_scale(degree))),
          transform_(degree > 0 ? 2 * degree : 1) {
        if (!(split_ > 0.0 && split_ < 1.0)) {
            throw std::domain_error("SubdivisionPlan: split must lie strictly in (0, 1)");
        }
        if (scale_ == 0.0 || !std::isfinite(scale_)) {
            throw std::domain_error("SubdivisionPlan: scale must be nonzero and finite");
        }

        const std::size_t n1 = degree_ + 1;
        alpha_.resize(n1);
        beta_.resize(n1);
        rescale_.resize(n1);
        alpha_[0] = beta_[0] = rescale_[0] = 1.0;
        const double sc = scale_ * split_;
        const double su = scale_ * (1.0 - split_);
        for (std::size_t i = 1; i <= degree_; ++i) {
            const double di = static_cast<double>(i);
            alpha_[i] = alpha_[i - 1] * sc / di;
            beta_[i] = beta_[i - 1] * su / di;
            rescale_[i] = rescale_[i - 1] * di / scale_;
        }
        for (std::size_t i = 0; i <= degree_; ++i) {
            if (!std::isfinite(alpha_[i]) || !std::isfinite(beta_[i]) ||
                !std::isfinite(rescale_[i])) {
                throw std::overflow_error(
                    "SubdivisionPlan: prefactors overflow for this degree/scale");
            }
        }

        if (with_spectrum) {
            transform_.forward_into(beta_, beta_spectrum_);
            instrument::beta_spectrum_builds += 1;
        }
    }

    std::size_t degree_;
    double split_;
    double scale_;
    TransformPlan transform_;
    std::vector<double> alpha_;
    std::vector<double> beta_;
    std::vector<double> rescale_;
    Spectrum beta_spectrum_;
};

inline SubdivisionPlan make_plan(std::size_t degree, double split,
                                 std::optional<double> scale = {}) {
    return SubdivisionPlan(degree, split, scale);
}

namespace detail {

struct FastsubScratch {
    std::vector<double> input;
    std::vector<double> conv;
    Spectrum spec;
};

inline FastsubScratch& fastsub_scratch() {
    static thread_local FastsubScratch scratch;
    return scratch;
}

// Shared body of the fft paths; when tail_out is non-null it receives the
// raw convolution coefficients gamma_{n+1..2n}, axis-major. All d axes go
// through one batched convolution against the shared beta spectrum; the
// point-major coordinate layout is already the batch-interleaved layout
// the engine wants.
inline ControlPolygon subdivide_left_fft_impl(const SubdivisionPlan& plan,
                                              const ControlPolygon& polygon,
                                              std::vector<double>* tail_out) {
    plan.require_degree(polygon);
    const std::size_t n = plan.degree();
    const std::size_t d = polygon.dimension();
    const auto& alpha = plan.alpha_prefactors();
    const auto& rescale = plan.rescale_factors();
    const double* coords = polygon.coords().data();

    auto& scratch = fastsub_scratch();
    scratch.input.resize((n + 1) * d);
    for (std::size_t i = 0; i <= n; ++i) {
        const double a = alpha[i];
        for (std::size_t b = 0; b < d; ++b) {
            scratch.input[i * d + b] = a * coords[i * d + b];
        }
    }
    plan.transform().convolve_batched(scratch.input, d, plan.beta_spectrum(), scratch.conv);

    std::vector<double> out((n + 1) * d);
    // v_0 = w_0 identically; take it from the input, not the transform.
    for (std::size_t b = 0; b < d; ++b) {
        out[b] = coords[b];
    }
    for (std::size_t k = 1; k <= n; ++k) {
        const double f = rescale[k];
        for (std::size_t b = 0; b < d; ++b) {
            out[k * d + b] = f * scratch.conv[k * d + b];
        }
    }

    if (tail_out != nullptr) {
        tail_out->resize(n * d);
        const std::size_t m = plan.transform().physical_length();
        for (std::size_t axis = 0; axis < d && n > 0; ++axis) {
            for (std::size_t j = 1; j < n; ++j) {
                (*tail_out)[axis * n + (j - 1)] = scratch.conv[(n + j) * d + axis];
            }
            // gamma_2n wraps onto bin 0 when the transform length is
            // exactly 2n; it is the single product alpha_n beta_n.
            (*tail_out)[axis * n + (n - 1)] =
                (m > 2 * n) ? scratch.conv[2 * n * d + axis]
                            : scratch.input[n * d + axis] * plan.beta_coefficients()[n];
        }
    }
    instrument::add_ops(d * 3 * (n + 1));
    return ControlPolygon(d, std::move(out));
}

} // namespace detail

/// Left segment V_0..V_n in O(d n log n): scale, transform, multiply by
/// the plan's beta spectrum, transform back, rescale.
inline ControlPolygon subdivide_left_fft(const SubdivisionPlan& plan,
                                         const ControlPolygon& polygon) {
    return detail::subdivide_left_fft_impl(plan, polygon, nullptr);
}

/// Left segment with the convolution evaluated by direct summation,
/// O(d n^2). Slower than the fft path for large n but more accurate.
inline ControlPolygon subdivide_left_direct(const SubdivisionPlan& plan,
                                            const ControlPolygon& polygon) {
    plan.require_degree(polygon);
    const std::size_t n = plan.degree();
    const std::size_t d = polygon.dimension();
    const auto& alpha = plan.alpha_prefactors();
    const auto& beta = plan.beta_coefficients();
    const auto& rescale = plan.rescale_factors();

    auto& scratch = detail::fastsub_scratch();
    scratch.input.resize(n + 1);
    std::vector<double> out((n + 1) * d);

    for (std::size_t axis = 0; axis < d; ++axis) {
        for (std::size_t i = 0; i <= n; ++i) {
            scratch.input[i] = alpha[i] * polygon.coord(i, axis);
        }
        for (std::size_t k = 0; k <= n; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i <= k; ++i) {
                acc += scratch.input[i] * beta[k - i];
            }
            out[k * d + axis] = rescale[k] * acc;
        }
    }
    instrument::add_ops(d * ((n + 1) * (n + 2) + 3 * (n + 1)));
    return ControlPolygon(d, std::move(out));
}

/// The plain convolution method without scaling (s = 1). Numerically
/// unstable beyond small degrees; kept so the degradation is observable.
inline ControlPolygon subdivide_left_unscaled(const ControlPolygon& polygon, double split) {
    const SubdivisionPlan plan(polygon.degree(), split, 1.0);
    return subdivide_left_fft(plan, polygon);
}

/// Right segment at c = 1 - plan.split(), via the reversal identity:
/// right(c) = reverse(left(reverse(polygon), 1 - c)). The plan passed
/// here is the complement plan, built for 1 - c.
inline ControlPolygon subdivide_right(const SubdivisionPlan& complement_plan,
                                      const ControlPolygon& polygon,
                                      Method method = Method::fft) {
    const ControlPolygon reversed = polygon.reversed();
    switch (method) {
    case Method::fft:
        return subdivide_left_fft(complement_plan, reversed).reversed();
    case Method::direct:
        return subdivide_left_direct(complement_plan, reversed).reversed();
    case Method::unscaled:
        return subdivide_left_unscaled(reversed, complement_plan.split()).reversed();
    default:
        throw std::invalid_argument("subdivide_right: unsupported method");
    }
}

/// Convenience overload building the complement plan internally.
inline ControlPolygon subdivide_right(const ControlPolygon& polygon, double split,
                                      Method method = Method::fft,
                                      std::optional<double> scale = {}) {
    if (!(split > 0.0 && split < 1.0)) {
        throw std::domain_error("subdivide_right: split must lie strictly in (0, 1)");
    }
    if (method == Method::unscaled) {
        return subdivide_left_unscaled(polygon.reversed(), 1.0 - split).reversed();
    }
    const SubdivisionPlan plan(polygon.degree(), 1.0 - split, scale);
    return subdivide_right(plan, polygon, method);
}

/// State retained after a subdivision that allows appending control
/// points one at a time: the raw convolution tail gamma_{n+1..2n} per
/// axis plus the original points the later correction terms need.
/// Single-owner value; extend_by_one mutates it.
class GammaTail {
public:
    GammaTail(const SubdivisionPlan& plan, const ControlPolygon& polygon,
              std::vector<double> gamma_tail)
        : dim_(polygon.dimension()),
          base_degree_(plan.degree()),
          split_(plan.split()),
          scale_(plan.scale()),
          gamma_(std::move(gamma_tail)),
          head_coords_(polygon.coords().begin(),
                       polygon.coords().begin() +
                           static_cast<std::ptrdiff_t>(plan.degree() * polygon.dimension())),
          rescale_cur_(plan.rescale_factors().back()),
          pow_u_(std::pow(1.0 - plan.split(), static_cast<double>(plan.degree()))),
          pow_c_(std::pow(plan.split(), static_cast<double>(plan.degree()))) {}

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t base_degree() const noexcept { return base_degree_; }
    std::size_t extensions_done() const noexcept { return steps_; }
    std::size_t remaining() const noexcept { return base_degree_ - steps_; }
    double split() const noexcept { return split_; }
    double scale() const noexcept { return scale_; }

    /// Raw convolution coefficients gamma_{n+1..2n} of one axis.
    std::span<const double> gamma(std::size_t axis) const {
        return {gamma_.data() + axis * base_degree_, base_degree_};
    }

    /// Appends control point W_{n+m} and returns the new left-segment
    /// point V_{n+m}. Throws once the retained tail is exhausted (after
    /// base_degree() extensions); re-plan at the higher degree then.
    Point extend_by_one(std::span<const double> new_point) {
        if (steps_ == base_degree_) {
            throw std::out_of_range("GammaTail: tail exhausted, re-plan required");
        }
        if (new_point.size() != dim_) {
            throw std::invalid_argument("GammaTail: new point has wrong dimension");
        }
        const std::size_t m = steps_ + 1;
        const std::size_t target = base_degree_ + m;
        const double c = split_;
        const double u = 1.0 - c;

        rescale_cur_ *= static_cast<double>(target) / scale_;
        pow_u_ *= u;
        pow_c_ *= c;
        appended_.insert(appended_.end(), new_point.begin(), new_point.end());

        // Bernstein weights B^{n+m}_i(c) for the head indices i < m,
        // by the ratio recurrence from B^{n+m}_0(c) = (1-c)^{n+m}.
        head_weights_.resize(m);
        head_weights_[0] = pow_u_;
        const double ratio_up = c / u;
        for (std::size_t i = 1; i < m; ++i) {
            head_weights_[i] = head_weights_[i - 1] *
                               (static_cast<double>(target - i + 1) / static_cast<double>(i)) *
                               ratio_up;
        }
        // B^{n+m}_{n+j}(c) for the appended indices j = 1..m, downward
        // from B^{n+m}_{n+m}(c) = c^{n+m}.
        new_weights_.resize(m);
        new_weights_[m - 1] = pow_c_;
        const double ratio_down = u / c;
        for (std::size_t j = m - 1; j > 0; --j) {
            const std::size_t i = base_degree_ + j + 1;
            new_weights_[j - 1] =
                new_weights_[j] *
                (static_cast<double>(i) / static_cast<double>(target - i + 1)) * ratio_down;
        }

        Point result(dim_);
        for (std::size_t axis = 0; axis < dim_; ++axis) {
            double acc = rescale_cur_ * gamma_[axis * base_degree_ + (m - 1)];
            for (std::size_t i = 0; i < m; ++i) {
                acc += head_weights_[i] * head_coords_[i * dim_ + axis];
            }
            for (std::size_t j = 0; j < m; ++j) {
                acc += new_weights_[j] * appended_[j * dim_ + axis];
            }
            result[axis] = acc;
        }

        steps_ = m;
        instrument::add_ops(dim_ * (4 * m + 2) + 6 * m + 8);
        return result;
    }

private:
    std::size_t dim_;
    std::size_t base_degree_;
    double split_;
    double scale_;
    std::vector<double> gamma_;       // axis-major, base_degree_ entries per axis
    std::vector<double> head_coords_; // original points W_0..W_{n-1}
    std::vector<double> appended_;    // points added so far
    std::vector<double> head_weights_;
    std::vector<double> new_weights_;
    double rescale_cur_; // (n+m)! / s^(n+m), running
    double pow_u_;       // (1-c)^(n+m), running
    double pow_c_;       // c^(n+m), running
    std::size_t steps_ = 0;
};

struct SubdivisionWithTail {
    ControlPolygon left;
    GammaTail tail;
};

/// Left segment plus the retained convolution tail for later extension.
inline SubdivisionWithTail subdivide_with_tail(const SubdivisionPlan& plan,
                                               const ControlPolygon& polygon) {
    std::vector<double> gamma_tail;
    ControlPolygon left = detail::subdivide_left_fft_impl(plan, polygon, &gamma_tail);
    return {std::move(left), GammaTail(plan, polygon, std::move(gamma_tail))};
}

} // namespace bezsub

#endif // BEZSUB_FASTSUB_HPP
