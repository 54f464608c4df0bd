#include "wvsim/detector.hpp"

#include <cmath>
#include <stdexcept>

namespace wvsim {

void DetectorModel::validate() const {
    if (!(contrast >= 0.0 && contrast <= 1.0)) {
        throw std::invalid_argument("contrast must lie in [0, 1]");
    }
    if (!(background_rate >= 0.0) || !(flux >= 0.0)) {
        throw std::invalid_argument("rates must be nonnegative");
    }
    if (!(exposure > 0.0)) {
        throw std::invalid_argument("exposure must be positive");
    }
}

double expected_counts(double ideal, double fringe_mean, const DetectorModel& d) {
    if (!(ideal >= 0.0 && ideal <= 1.0) || !(fringe_mean >= 0.0 && fringe_mean <= 1.0)) {
        throw std::invalid_argument("intensities must lie in [0, 1]");
    }
    d.validate();
    const double rate = d.flux * (fringe_mean + d.contrast * (ideal - fringe_mean)) +
                        d.background_rate;
    return rate * d.exposure;
}

double expected_counts_direct(double ideal, const DetectorModel& d) {
    if (!(ideal >= 0.0)) {
        throw std::invalid_argument("intensity must be nonnegative");
    }
    d.validate();
    return (d.flux * ideal + d.background_rate) * d.exposure;
}

double expected_counts(double ideal, double fringe_mean, const DetectorModel& d,
                       CountingMode mode) {
    return mode == CountingMode::Interference ? expected_counts(ideal, fringe_mean, d)
                                              : expected_counts_direct(ideal, d);
}

std::int64_t sample_counts(double expected, RandomStream& stream) {
    if (!(expected >= 0.0)) {
        throw std::invalid_argument("expected counts must be nonnegative");
    }
    return stream.poisson(expected);
}

}  // namespace wvsim
