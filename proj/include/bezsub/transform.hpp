#ifndef BEZSUB_TRANSFORM_HPP
#define BEZSUB_TRANSFORM_HPP

#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "bezsub/instrumentation.hpp"

namespace bezsub {

namespace detail {

// Roots of unity exp(-2*pi*i*j/n) for j < n/2, split into re/im arrays.
// Tables are built once per size, never mutated afterwards, and live for
// the whole process; plans hold plain pointers into this cache.
struct TwiddleTable {
    std::vector<double> re;
    std::vector<double> im;
};

inline const TwiddleTable& pow2_twiddles(std::size_t n) {
    static std::mutex build_mutex;
    static std::array<std::atomic<const TwiddleTable*>, 26> slots{};

    const auto lg = static_cast<std::size_t>(std::countr_zero(n));
    const TwiddleTable* table = slots[lg].load(std::memory_order_acquire);
    if (table != nullptr) return *table;

    std::scoped_lock lock(build_mutex);
    table = slots[lg].load(std::memory_order_relaxed);
    if (table == nullptr) {
        auto built = std::make_unique<TwiddleTable>();
        const std::size_t half = n / 2;
        built->re.assign(half == 0 ? 1 : half, 0.0);
        built->im.assign(half == 0 ? 1 : half, 0.0);
        built->re[0] = 1.0;
        // First quadrant from small-angle trig, axis values exact, second
        // quadrant by the reflection w(j) = -conj(w(n/2 - j)).
        for (std::size_t j = 1; 4 * j < n; ++j) {
            const long double angle = -2.0L * std::numbers::pi_v<long double> *
                                      static_cast<long double>(j) / static_cast<long double>(n);
            built->re[j] = static_cast<double>(std::cos(angle));
            built->im[j] = static_cast<double>(std::sin(angle));
        }
        if (n % 4 == 0 && n >= 4) {
            built->re[n / 4] = 0.0;
            built->im[n / 4] = -1.0;
        }
        for (std::size_t j = n / 4 + 1; j < half; ++j) {
            built->re[j] = -built->re[half - j];
            built->im[j] = built->im[half - j];
        }
        table = built.release();
        slots[lg].store(table, std::memory_order_release);
    }
    return *table;
}

// Stockham autosort FFT over split re/im arrays, n a power of two, with
// `batch` independent transforms interleaved element-wise (logical index
// k of transform b lives at k*batch + b). Unnormalized; invert
// conjugates the twiddles. Ping-pongs between the caller's data and work
// buffers; on return re/im point at the result (either the original data
// arrays or the work arrays). Radix 4 with a leading radix-2 stage when
// log2(n) is odd; the inner loops are unit stride with the stage
// twiddles hoisted, which is what lets the compiler vectorize them.
inline void cfft_pow2_batched(double*& re, double*& im, double* work_re, double* work_im,
                              std::size_t n, std::size_t batch, bool invert,
                              const TwiddleTable& tw) {
    if (n <= 1) return;
    double* sre = re;
    double* sim = im;
    double* dre = work_re;
    double* dim = work_im;

    std::size_t len = n;      // transform length handled by this stage
    std::size_t run = batch;  // contiguous doubles per butterfly arm

    if (std::countr_zero(n) & 1) {
        const std::size_t m = len / 2;
        for (std::size_t p = 0; p < m; ++p) {
            const double wr = tw.re[p];
            const double wi = invert ? -tw.im[p] : tw.im[p];
            const double* ar = sre + run * p;
            const double* ai = sim + run * p;
            const double* br = ar + run * m;
            const double* bi = ai + run * m;
            double* cr = dre + run * 2 * p;
            double* ci = dim + run * 2 * p;
            double* er = cr + run;
            double* ei = ci + run;
            for (std::size_t q = 0; q < run; ++q) {
                cr[q] = ar[q] + br[q];
                ci[q] = ai[q] + bi[q];
                const double xr = ar[q] - br[q], xi = ai[q] - bi[q];
                er[q] = xr * wr - xi * wi;
                ei[q] = xr * wi + xi * wr;
            }
        }
        std::swap(sre, dre);
        std::swap(sim, dim);
        len = m;
        run *= 2;
    }

    const double rot = invert ? 1.0 : -1.0; // multiply by -+i in the odd arm
    while (len > 1) {
        const std::size_t quarter = len / 4;
        const std::size_t tstep = n / len;
        for (std::size_t p = 0; p < quarter; ++p) {
            const double w1r = tw.re[p * tstep];
            const double w1i = invert ? -tw.im[p * tstep] : tw.im[p * tstep];
            const double w2r = tw.re[2 * p * tstep];
            const double w2i = invert ? -tw.im[2 * p * tstep] : tw.im[2 * p * tstep];
            const double w3r = w1r * w2r - w1i * w2i;
            const double w3i = w1r * w2i + w1i * w2r;
            const double* ar = sre + run * p;
            const double* ai = sim + run * p;
            const double* br = ar + run * quarter;
            const double* bi = ai + run * quarter;
            const double* cr = ar + 2 * run * quarter;
            const double* ci = ai + 2 * run * quarter;
            const double* er = ar + 3 * run * quarter;
            const double* ei = ai + 3 * run * quarter;
            double* o0r = dre + run * 4 * p;
            double* o0i = dim + run * 4 * p;
            double* o1r = o0r + run;
            double* o1i = o0i + run;
            double* o2r = o0r + 2 * run;
            double* o2i = o0i + 2 * run;
            double* o3r = o0r + 3 * run;
            double* o3i = o0i + 3 * run;
            for (std::size_t q = 0; q < run; ++q) {
                const double s0r = ar[q] + cr[q], s0i = ai[q] + ci[q];
                const double s1r = ar[q] - cr[q], s1i = ai[q] - ci[q];
                const double s2r = br[q] + er[q], s2i = bi[q] + ei[q];
                // (b - d) times -+i
                const double s3r = rot * -(bi[q] - ei[q]);
                const double s3i = rot * (br[q] - er[q]);
                o0r[q] = s0r + s2r;
                o0i[q] = s0i + s2i;
                const double u1r = s1r + s3r, u1i = s1i + s3i;
                o1r[q] = u1r * w1r - u1i * w1i;
                o1i[q] = u1r * w1i + u1i * w1r;
                const double u2r = s0r - s2r, u2i = s0i - s2i;
                o2r[q] = u2r * w2r - u2i * w2i;
                o2i[q] = u2r * w2i + u2i * w2r;
                const double u3r = s1r - s3r, u3i = s1i - s3i;
                o3r[q] = u3r * w3r - u3i * w3i;
                o3i[q] = u3r * w3i + u3i * w3r;
            }
        }
        std::swap(sre, dre);
        std::swap(sim, dim);
        len = quarter;
        run *= 4;
    }
    re = sre;
    im = sim;
    instrument::add_ops(batch * (n / 2) * static_cast<std::size_t>(std::countr_zero(n)) * 10);
}

inline void cfft_pow2(double*& re, double*& im, double* work_re, double* work_im,
                      std::size_t n, bool invert, const TwiddleTable& tw) {
    cfft_pow2_batched(re, im, work_re, work_im, n, 1, invert, tw);
}

struct TransformScratch {
    std::vector<double> a_re, a_im, b_re, b_im;

    void ensure(std::size_t n) {
        if (a_re.size() < n) {
            a_re.resize(n);
            a_im.resize(n);
            b_re.resize(n);
            b_im.resize(n);
        }
    }
};

inline TransformScratch& transform_scratch() {
    static thread_local TransformScratch scratch;
    return scratch;
}

} // namespace detail

/// Selects how a plan maps the logical convolution length onto the size
/// actually transformed.
enum class LengthMode {
    /// Zero-pad to the smallest power of two >= the logical length.
    pad_power_of_two,
    /// Transform at exactly the logical length (Bluestein when that
    /// length is not a power of two).
    exact,
};

struct TransformOptions {
    LengthMode mode = LengthMode::pad_power_of_two;
    std::size_t max_length = std::size_t{1} << 22;
};

/// Half-spectrum of a real sequence of length physical_length:
/// floor(physical_length / 2) + 1 complex bins, stored as split
/// real/imaginary arrays.
struct Spectrum {
    std::vector<double> re;
    std::vector<double> im;
    std::size_t physical_length = 0;

    std::size_t bin_count() const noexcept { return re.size(); }
    std::complex<double> bin(std::size_t k) const { return {re[k], im[k]}; }

    void resize(std::size_t bins) {
        re.resize(bins);
        im.resize(bins);
    }
};

/// Precomputed state for forward/inverse real transforms of one length.
/// Immutable after construction and shareable across threads; the only
/// shared tables it points at are the process-wide immutable twiddles.
class TransformPlan {
public:
    explicit TransformPlan(std::size_t logical_length, TransformOptions options = {})
        : logical_(logical_length), mode_(options.mode) {
        if (logical_ == 0) {
            throw std::invalid_argument("TransformPlan: length must be >= 1");
        }
        if (logical_ > options.max_length) {
            throw std::length_error("TransformPlan: length exceeds configured maximum");
        }
        if (mode_ == LengthMode::pad_power_of_two) {
            physical_ = std::bit_ceil(logical_);
        } else {
            physical_ = logical_;
        }

        if (std::has_single_bit(physical_)) {
            bluestein_ = false;
            if (physical_ >= 4) {
                core_tw_ = &detail::pow2_twiddles(physical_ / 2);
                unpack_tw_ = &detail::pow2_twiddles(physical_);
            }
        } else {
            bluestein_ = true;
            build_bluestein_tables();
        }
    }

    std::size_t logical_length() const noexcept { return logical_; }
    std::size_t physical_length() const noexcept { return physical_; }
    std::size_t bin_count() const noexcept { return physical_ / 2 + 1; }
    LengthMode mode() const noexcept { return mode_; }

    /// Forward transform of x zero-padded to physical_length, written
    /// into out (resized to bin_count()).
    void forward_into(std::span<const double> x, Spectrum& out) const {
        if (x.size() > physical_) {
            throw std::length_error("forward: input longer than the transform length");
        }
        instrument::forward_transforms += 1;
        out.physical_length = physical_;
        out.resize(bin_count());
        if (bluestein_) {
            forward_bluestein(x, out.re.data(), out.im.data());
        } else {
            forward_pow2(x, out.re.data(), out.im.data());
        }
    }

    /// Inverse transform; returns the real sequence of length
    /// physical_length in out.
    void inverse_into(const Spectrum& s, std::vector<double>& out) const {
        require_compatible(s);
        out.resize(physical_);
        if (bluestein_) {
            inverse_bluestein(s.re.data(), s.im.data(), out.data());
        } else {
            inverse_pow2(s.re.data(), s.im.data(), out.data());
        }
    }

    void require_compatible(const Spectrum& s) const {
        if (s.physical_length != physical_ || s.bin_count() != bin_count()) {
            throw std::invalid_argument("spectrum does not belong to this plan");
        }
    }

    /// Cyclic convolution of `batch` interleaved real sequences with one
    /// shared spectrum of a real sequence: forward transform, bin-wise
    /// multiply, inverse transform, all fused. Element i of sequence b
    /// reads from x[i*batch + b]; out receives physical_length*batch
    /// values in the same layout. Equivalent to forward_into +
    /// multiply_spectra + inverse_into per sequence.
    void convolve_batched(std::span<const double> x, std::size_t batch,
                          const Spectrum& spectrum, std::vector<double>& out) const {
        require_compatible(spectrum);
        if (batch == 0 || x.size() % batch != 0) {
            throw std::invalid_argument("convolve_batched: bad batch layout");
        }
        const std::size_t in_len = x.size() / batch;
        if (in_len > physical_) {
            throw std::length_error("convolve_batched: input longer than the transform");
        }
        instrument::forward_transforms += batch;
        out.resize(physical_ * batch);

        if (bluestein_) {
            // Fidelity path: per sequence through the plain entry points.
            std::vector<double> one(in_len);
            Spectrum s;
            std::vector<double> conv;
            for (std::size_t b = 0; b < batch; ++b) {
                for (std::size_t i = 0; i < in_len; ++i) one[i] = x[i * batch + b];
                instrument::forward_transforms -= 1; // forward_into counts it
                forward_into(one, s);
                multiply_spectra(s, spectrum, s);
                inverse_into(s, conv);
                for (std::size_t i = 0; i < physical_; ++i) out[i * batch + b] = conv[i];
            }
            return;
        }

        const std::size_t m = physical_;
        if (m == 1) {
            for (std::size_t b = 0; b < batch; ++b) {
                out[b] = (x.empty() ? 0.0 : x[b]) * spectrum.re[0];
            }
            return;
        }

        const std::size_t h = m / 2;
        auto& scratch = detail::transform_scratch();
        scratch.ensure(h * batch);
        double* zre = scratch.a_re.data();
        double* zim = scratch.a_im.data();

        // Pack: even samples in the real lane, odd in the imaginary lane.
        for (std::size_t k = 0; k < h; ++k) {
            const std::size_t i0 = 2 * k, i1 = 2 * k + 1;
            for (std::size_t b = 0; b < batch; ++b) {
                zre[k * batch + b] = (i0 < in_len) ? x[i0 * batch + b] : 0.0;
                zim[k * batch + b] = (i1 < in_len) ? x[i1 * batch + b] : 0.0;
            }
        }
        if (h >= 2) {
            detail::cfft_pow2_batched(zre, zim, scratch.b_re.data(), scratch.b_im.data(), h,
                                      batch, false, *core_tw_);
        }

        // Fused split -> multiply -> merge over conjugate bin pairs.
        const double* sre = spectrum.re.data();
        const double* sim = spectrum.im.data();
        for (std::size_t b = 0; b < batch; ++b) {
            const double x0 = zre[b] + zim[b];
            const double xh = zre[b] - zim[b];
            const double c0 = x0 * sre[0];
            const double ch = xh * sre[h];
            zre[b] = 0.5 * (c0 + ch);
            zim[b] = 0.5 * (c0 - ch);
        }
        for (std::size_t k = 1; 2 * k < h; ++k) {
            const double wr = unpack_tw_->re[k];
            const double wi = unpack_tw_->im[k];
            const double skr = sre[k], ski = sim[k];
            const double shr = sre[h - k], shi = sim[h - k];
            double* akr = zre + k * batch;
            double* aki = zim + k * batch;
            double* bkr = zre + (h - k) * batch;
            double* bki = zim + (h - k) * batch;
            for (std::size_t b = 0; b < batch; ++b) {
                const double ar = akr[b], ai = aki[b];
                const double br = bkr[b], bi = bki[b];
                const double er = 0.5 * (ar + br), ei = 0.5 * (ai - bi);
                const double orr = 0.5 * (ai + bi), oi = -0.5 * (ar - br);
                const double t1r = wr * orr - wi * oi;
                const double t1i = wr * oi + wi * orr;
                // X_k = E + W O, X_{h-k} = conj(E) - conj(W O)
                const double xkr = er + t1r, xki = ei + t1i;
                const double xhr = er - t1r, xhi = -ei + t1i;
                const double pkr = xkr * skr - xki * ski;
                const double pki = xkr * ski + xki * skr;
                const double phr = xhr * shr - xhi * shi;
                const double phi = xhr * shi + xhi * shr;
                const double apr = 0.5 * (pkr + phr), api = 0.5 * (pki - phi);
                const double dpr = 0.5 * (pkr - phr), dpi = 0.5 * (pki + phi);
                // B' = conj(W) D; Z[k] = A' + i B', Z[h-k] = conj(A') + i conj(B')
                const double bpr = wr * dpr + wi * dpi;
                const double bpi = wr * dpi - wi * dpr;
                akr[b] = apr - bpi;
                aki[b] = api + bpr;
                bkr[b] = apr + bpi;
                bki[b] = -api + bpr;
            }
        }
        if (h >= 2) {
            // Self-paired bin at h/2: X = conj(Z), Z' = conj(X beta).
            const double smr = sre[h / 2], smi = sim[h / 2];
            double* akr = zre + (h / 2) * batch;
            double* aki = zim + (h / 2) * batch;
            for (std::size_t b = 0; b < batch; ++b) {
                const double xr = akr[b], xi = -aki[b];
                akr[b] = xr * smr - xi * smi;
                aki[b] = -(xr * smi + xi * smr);
            }
        }

        if (h >= 2) {
            detail::cfft_pow2_batched(zre, zim, scratch.b_re.data(), scratch.b_im.data(), h,
                                      batch, true, *core_tw_);
        }
        const double scale = 1.0 / static_cast<double>(h);
        for (std::size_t k = 0; k < h; ++k) {
            const double* pr = zre + k * batch;
            const double* pi = zim + k * batch;
            double* q0 = out.data() + 2 * k * batch;
            double* q1 = q0 + batch;
            for (std::size_t b = 0; b < batch; ++b) {
                q0[b] = pr[b] * scale;
                q1[b] = pi[b] * scale;
            }
        }
        instrument::add_ops(batch * 20 * h);
    }

private:
    // Real forward via the packed half-length complex transform: even
    // samples in the real lane, odd samples in the imaginary lane, then
    // one split/merge pass over the bins.
    void forward_pow2(std::span<const double> x, double* out_re, double* out_im) const {
        const std::size_t m = physical_;
        if (m == 1) {
            out_re[0] = x.empty() ? 0.0 : x[0];
            out_im[0] = 0.0;
            return;
        }
        const std::size_t h = m / 2;
        auto& scratch = detail::transform_scratch();
        scratch.ensure(h);
        double* zre = scratch.a_re.data();
        double* zim = scratch.a_im.data();
        const std::size_t pairs = x.size() / 2;
        for (std::size_t k = 0; k < pairs; ++k) {
            zre[k] = x[2 * k];
            zim[k] = x[2 * k + 1];
        }
        if (2 * pairs < x.size()) {
            zre[pairs] = x[2 * pairs];
            zim[pairs] = 0.0;
        }
        for (std::size_t k = (x.size() + 1) / 2; k < h; ++k) {
            zre[k] = 0.0;
            zim[k] = 0.0;
        }
        if (h >= 2) {
            detail::cfft_pow2(zre, zim, scratch.b_re.data(), scratch.b_im.data(), h, false,
                              *core_tw_);
        }

        out_re[0] = zre[0] + zim[0];
        out_im[0] = 0.0;
        out_re[h] = zre[0] - zim[0];
        out_im[h] = 0.0;
        for (std::size_t k = 1; k < h; ++k) {
            const double ar = zre[k], ai = zim[k];
            const double br = zre[h - k], bi = zim[h - k];
            // even part (Z[k] + conj(Z[h-k]))/2, odd part -i(Z[k] - conj(Z[h-k]))/2
            const double er = 0.5 * (ar + br);
            const double ei = 0.5 * (ai - bi);
            const double orr = 0.5 * (ai + bi);
            const double oi = -0.5 * (ar - br);
            const double wr = unpack_tw_->re[k];
            const double wi = unpack_tw_->im[k];
            out_re[k] = er + wr * orr - wi * oi;
            out_im[k] = ei + wr * oi + wi * orr;
        }
        instrument::add_ops(6 * h);
    }

    void inverse_pow2(const double* in_re, const double* in_im, double* out) const {
        const std::size_t m = physical_;
        if (m == 1) {
            out[0] = in_re[0];
            return;
        }
        const std::size_t h = m / 2;
        auto& scratch = detail::transform_scratch();
        scratch.ensure(h);
        double* zre = scratch.a_re.data();
        double* zim = scratch.a_im.data();

        zre[0] = 0.5 * (in_re[0] + in_re[h]) - 0.5 * (in_im[0] + in_im[h]);
        zim[0] = 0.5 * (in_im[0] - in_im[h]) + 0.5 * (in_re[0] - in_re[h]);
        for (std::size_t k = 1; k < h; ++k) {
            const double xr = in_re[k], xi = in_im[k];
            const double yr = in_re[h - k], yi = in_im[h - k];
            // A = (X[k] + conj(X[h-k]))/2, B = conj(W^k) (X[k] - conj(X[h-k]))/2,
            // Z[k] = A + iB
            const double sr = 0.5 * (xr + yr);
            const double si = 0.5 * (xi - yi);
            const double dr = 0.5 * (xr - yr);
            const double di = 0.5 * (xi + yi);
            const double wr = unpack_tw_->re[k];
            const double wi = -unpack_tw_->im[k];
            const double br = wr * dr - wi * di;
            const double bi = wr * di + wi * dr;
            zre[k] = sr - bi;
            zim[k] = si + br;
        }
        if (h >= 2) {
            detail::cfft_pow2(zre, zim, scratch.b_re.data(), scratch.b_im.data(), h, true,
                              *core_tw_);
        }
        const double scale = 1.0 / static_cast<double>(h);
        for (std::size_t k = 0; k < h; ++k) {
            out[2 * k] = zre[k] * scale;
            out[2 * k + 1] = zim[k] * scale;
        }
        instrument::add_ops(8 * h);
    }

    void build_bluestein_tables() {
        const std::size_t m = physical_;
        conv_size_ = std::bit_ceil(2 * m - 1);
        core_tw_ = &detail::pow2_twiddles(conv_size_);

        chirp_re_.resize(m);
        chirp_im_.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            const std::uint64_t q = (static_cast<std::uint64_t>(j) * j) % (2 * m);
            const double angle =
                -std::numbers::pi * static_cast<double>(q) / static_cast<double>(m);
            chirp_re_[j] = std::cos(angle);
            chirp_im_[j] = std::sin(angle);
        }

        std::vector<double> ker_re(conv_size_, 0.0), ker_im(conv_size_, 0.0);
        ker_re[0] = chirp_re_[0];
        ker_im[0] = -chirp_im_[0];
        for (std::size_t j = 1; j < m; ++j) {
            ker_re[j] = ker_re[conv_size_ - j] = chirp_re_[j];
            ker_im[j] = ker_im[conv_size_ - j] = -chirp_im_[j];
        }
        std::vector<double> work_re(conv_size_), work_im(conv_size_);
        double* kre = ker_re.data();
        double* kim = ker_im.data();
        detail::cfft_pow2(kre, kim, work_re.data(), work_im.data(), conv_size_, false,
                          *core_tw_);
        kernel_re_.assign(kre, kre + conv_size_);
        kernel_im_.assign(kim, kim + conv_size_);
    }

    // Full complex DFT of length physical_ via the chirp factorization:
    // X[k] = chirp[k] * sum_j (x[j] chirp[j]) conj(chirp[k-j]).
    void bluestein_dft(const double* in_re, const double* in_im, double* out_re,
                       double* out_im) const {
        const std::size_t m = physical_;
        const std::size_t p = conv_size_;
        auto& scratch = detail::transform_scratch();
        scratch.ensure(p);
        double* ure = scratch.a_re.data();
        double* uim = scratch.a_im.data();
        for (std::size_t j = 0; j < m; ++j) {
            ure[j] = in_re[j] * chirp_re_[j] - in_im[j] * chirp_im_[j];
            uim[j] = in_re[j] * chirp_im_[j] + in_im[j] * chirp_re_[j];
        }
        for (std::size_t j = m; j < p; ++j) {
            ure[j] = 0.0;
            uim[j] = 0.0;
        }
        detail::cfft_pow2(ure, uim, scratch.b_re.data(), scratch.b_im.data(), p, false,
                          *core_tw_);
        for (std::size_t j = 0; j < p; ++j) {
            const double r = ure[j] * kernel_re_[j] - uim[j] * kernel_im_[j];
            const double i = ure[j] * kernel_im_[j] + uim[j] * kernel_re_[j];
            ure[j] = r;
            uim[j] = i;
        }
        double* wre = (ure == scratch.a_re.data()) ? scratch.b_re.data() : scratch.a_re.data();
        double* wim = (uim == scratch.a_im.data()) ? scratch.b_im.data() : scratch.a_im.data();
        detail::cfft_pow2(ure, uim, wre, wim, p, true, *core_tw_);
        const double scale = 1.0 / static_cast<double>(p);
        for (std::size_t k = 0; k < m; ++k) {
            const double vr = ure[k] * scale;
            const double vi = uim[k] * scale;
            out_re[k] = vr * chirp_re_[k] - vi * chirp_im_[k];
            out_im[k] = vr * chirp_im_[k] + vi * chirp_re_[k];
        }
        instrument::add_ops(10 * m + 6 * p);
    }

    void forward_bluestein(std::span<const double> x, double* out_re, double* out_im) const {
        const std::size_t m = physical_;
        std::vector<double> in_re(m, 0.0), in_im(m, 0.0);
        std::copy(x.begin(), x.end(), in_re.begin());
        std::vector<double> full_re(m), full_im(m);
        bluestein_dft(in_re.data(), in_im.data(), full_re.data(), full_im.data());
        std::copy_n(full_re.data(), bin_count(), out_re);
        std::copy_n(full_im.data(), bin_count(), out_im);
    }

    void inverse_bluestein(const double* bins_re, const double* bins_im, double* out) const {
        const std::size_t m = physical_;
        // Rebuild the conjugate-symmetric full spectrum, then use
        // idft(X) = conj(dft(conj X)) / m and keep the real parts.
        std::vector<double> in_re(m), in_im(m);
        for (std::size_t k = 0; k < bin_count(); ++k) {
            in_re[k] = bins_re[k];
            in_im[k] = -bins_im[k];
        }
        for (std::size_t k = bin_count(); k < m; ++k) {
            in_re[k] = bins_re[m - k];
            in_im[k] = bins_im[m - k];
        }
        std::vector<double> out_re(m), out_im(m);
        bluestein_dft(in_re.data(), in_im.data(), out_re.data(), out_im.data());
        const double scale = 1.0 / static_cast<double>(m);
        for (std::size_t j = 0; j < m; ++j) {
            out[j] = out_re[j] * scale;
        }
    }

    std::size_t logical_;
    std::size_t physical_ = 0;
    LengthMode mode_;
    bool bluestein_ = false;
    const detail::TwiddleTable* core_tw_ = nullptr;
    const detail::TwiddleTable* unpack_tw_ = nullptr;

    std::size_t conv_size_ = 0;
    std::vector<double> chirp_re_, chirp_im_;
    std::vector<double> kernel_re_, kernel_im_;
};

inline Spectrum forward(const TransformPlan& plan, std::span<const double> x) {
    Spectrum s;
    plan.forward_into(x, s);
    return s;
}

inline std::vector<double> inverse(const TransformPlan& plan, const Spectrum& s) {
    std::vector<double> out;
    plan.inverse_into(s, out);
    return out;
}

/// Bin-wise complex product; both spectra must come from plans of the
/// same physical length. out may alias either input.
inline void multiply_spectra(const Spectrum& a, const Spectrum& b, Spectrum& out) {
    if (a.physical_length != b.physical_length || a.bin_count() != b.bin_count()) {
        throw std::invalid_argument("multiply_spectra: spectra from different plans");
    }
    const std::size_t bins = a.bin_count();
    out.physical_length = a.physical_length;
    out.resize(bins);
    const double* ar = a.re.data();
    const double* ai = a.im.data();
    const double* br = b.re.data();
    const double* bi = b.im.data();
    double* cr = out.re.data();
    double* ci = out.im.data();
    for (std::size_t k = 0; k < bins; ++k) {
        const double r = ar[k] * br[k] - ai[k] * bi[k];
        const double i = ar[k] * bi[k] + ai[k] * br[k];
        cr[k] = r;
        ci[k] = i;
    }
    instrument::add_ops(6 * bins);
}

inline Spectrum multiply_spectra(const Spectrum& a, const Spectrum& b) {
    Spectrum out;
    multiply_spectra(a, b, out);
    return out;
}

} // namespace bezsub

#endif // BEZSUB_TRANSFORM_HPP
