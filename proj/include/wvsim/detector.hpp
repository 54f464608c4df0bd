#pragma once

#include <cstdint>
#include <string>

#include "wvsim/rng.hpp"

namespace wvsim {

/// Finite contrast, background, flux and exposure of the counting chain.
struct DetectorModel {
    double contrast = 1.0;         // fringe visibility factor, in [0, 1]
    double background_rate = 0.0;  // counts/second
    double flux = 1.0e4;           // counts/second at unit intensity
    double exposure = 1.0;         // seconds per setting
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument if any field is out of range.
    void validate() const;
};

/// Whether a setting sees the interference term (O/H beams) or measures a
/// path directly (polarimeter mode, which carries no contrast scaling).
enum class CountingMode { Interference, Direct };

struct CountRecord {
    double expected = 0.0;
    std::int64_t sampled = 0;
    std::string setting;
};

/// Expected counts for an interferometric setting. Contrast scales only the
/// oscillatory deviation from the fringe mean (pure dephasing of the path
/// subsystem):
///   counts = (flux * (mean + contrast * (ideal - mean)) + background) * exposure.
/// ideal and fringe_mean must lie in [0, 1].
double expected_counts(double ideal, double fringe_mean, const DetectorModel& d);

/// Expected counts without an interference term:
///   counts = (flux * ideal + background) * exposure.
double expected_counts_direct(double ideal, const DetectorModel& d);

double expected_counts(double ideal, double fringe_mean, const DetectorModel& d,
                       CountingMode mode);

/// One Poisson draw with the given mean from the stream. Identical
/// (seed, stream keys) give identical draws.
std::int64_t sample_counts(double expected, RandomStream& stream);

}  // namespace wvsim
