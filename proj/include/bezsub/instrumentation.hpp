#ifndef BEZSUB_INSTRUMENTATION_HPP
#define BEZSUB_INSTRUMENTATION_HPP

#include <cstdint>

namespace bezsub::instrument {

// Per-thread operation counters. Kernels add their trip counts in bulk
// (one add per call), so the hot paths pay a handful of cycles at most.
// Counts are proportional to floating-point work, not exact flop totals.

inline thread_local std::uint64_t ops = 0;
inline thread_local std::uint64_t forward_transforms = 0;
inline thread_local std::uint64_t beta_spectrum_builds = 0;

inline void add_ops(std::uint64_t n) noexcept { ops += n; }

inline void reset() noexcept {
    ops = 0;
    forward_transforms = 0;
    beta_spectrum_builds = 0;
}

} // namespace bezsub::instrument

#endif // BEZSUB_INSTRUMENTATION_HPP
