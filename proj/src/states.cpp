#include "wvsim/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wvsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_symmetric(double x) {
    // into [-pi, pi]
    double w = std::remainder(x, kTwoPi);
    return w;
}

double wrap_positive(double x) {
    // into [0, 2pi)
    double w = std::fmod(x, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

}  // namespace

PostSelection::PostSelection(double theta_in, double phi_in) {
    if (!std::isfinite(theta_in) || !std::isfinite(phi_in)) {
        throw std::invalid_argument("post-selection angles must be finite");
    }
    theta = wrap_symmetric(theta_in);
    phi = wrap_positive(phi_in);
}

bool PhaseShifterSetting::consistent(double tol) const {
    if (!record_) return true;
    return std::abs(chi_ - record_->chi()) <= tol;
}

Operator pauli(Axis axis) {
    switch (axis) {
        case Axis::X:
            return Operator::from_rows(2, {0.0, 1.0, 1.0, 0.0}).tag_hermitian().tag_unitary();
        case Axis::Y:
            return Operator::from_rows(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0})
                .tag_hermitian()
                .tag_unitary();
        case Axis::Z:
            return Operator::from_rows(2, {1.0, 0.0, 0.0, -1.0}).tag_hermitian().tag_unitary();
    }
    throw std::invalid_argument("unknown Pauli axis");
}

StateVector spin_x_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector{Complex(r, 0.0), Complex(r, 0.0)};
}

StateVector spin_state(const PostSelection& p) {
    return StateVector{Complex(std::cos(0.5 * p.theta), 0.0),
                       std::polar(std::sin(0.5 * p.theta), p.phi)};
}

Operator path_projector(double chi) {
    // |pi(chi)><pi(chi)| with |pi(chi)> = (|I> + e^{i chi}|II>)/sqrt(2)
    Operator out(2);
    out.at(0, 0) = 0.5;
    out.at(1, 1) = 0.5;
    out.at(0, 1) = 0.5 * std::polar(1.0, -chi);
    out.at(1, 0) = 0.5 * std::polar(1.0, chi);
    return out.tag_hermitian();
}

Operator lifted_pauli(Axis axis, Subsystem subsystem) {
    const Operator id = Operator::identity(2);
    Operator out = subsystem == Subsystem::Path ? tensor(pauli(axis), id)
                                                : tensor(id, pauli(axis));
    return out.tag_hermitian().tag_unitary();
}

}  // namespace wvsim
