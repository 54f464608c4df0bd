#include "wvsim/experiment.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wvsim {

namespace {

constexpr double kPi = std::numbers::pi;

// O-beam intensity at phase-shifter setting chi from the chi=0 arm
// amplitudes: |e^{i chi} a_I + a_II|^2 / 2, identical to <Pi^p(chi)> of the
// evolved-at-chi=0 state (the incident phase commutes with the diagonal
// interaction).
double o_intensity(const ArmAmplitudes& arms, double chi) {
    return 0.5 * std::norm(std::polar(1.0, chi) * arms.arm_i + arms.arm_ii);
}

double h_intensity(const ArmAmplitudes& arms, double chi) {
    return 0.5 * std::norm(std::polar(1.0, chi) * arms.arm_i - arms.arm_ii);
}

}  // namespace

Coupling::Coupling(double alpha_in) : alpha(alpha_in) {
    if (!std::isfinite(alpha) || std::abs(alpha) >= kPi) {
        throw std::invalid_argument("coupling angle must satisfy |alpha| < pi");
    }
}

StateVector incident_state(double chi, const StateVector& pre) {
    if (pre.dim() != 2) throw std::invalid_argument("pre-selected state must be dim 2");
    const StateVector p = pre.normalized();
    const Complex path_i = std::polar(1.0 / std::sqrt(2.0), chi);
    const Complex path_ii(1.0 / std::sqrt(2.0), 0.0);
    StateVector out(4);
    out[0] = path_i * p[0];
    out[1] = path_i * p[1];
    out[2] = path_ii * p[0];
    out[3] = path_ii * p[1];
    return out;
}

Operator interaction(EvolutionModel model, Coupling c) {
    const Operator zz = lifted_pauli(Axis::Z, Subsystem::Spin) *
                        lifted_pauli(Axis::Z, Subsystem::Path);
    switch (model) {
        case EvolutionModel::Exact:
            return unitary_exp(zz, c.alpha);
        case EvolutionModel::FirstOrder: {
            // 1 - i alpha h / 2, non-unitary truncation
            Operator out = Operator::identity(4);
            const Complex factor(0.0, -0.5 * c.alpha);
            for (int r = 0; r < 4; ++r) {
                for (int col = 0; col < 4; ++col) {
                    out.at(r, col) += factor * zz.at(r, col);
                }
            }
            return out;
        }
        case EvolutionModel::ReExponentiated:
            throw unsupported_model_error(
                "the re-exponentiated model acts on post-selected amplitudes, not as an operator");
    }
    throw std::invalid_argument("unknown evolution model");
}

ArmAmplitudes post_selected_arms(const StateVector& pre, const PostSelection& post,
                                 Coupling c, EvolutionModel model) {
    const StateVector f = spin_state(post);

    if (model == EvolutionModel::ReExponentiated) {
        const Complex g = inner(f, pre.normalized());
        if (std::norm(g) < kOrthogonalOverlapSq) {
            throw orthogonal_postselection_error(
                "re-exponentiated evolution undefined for orthogonal post-selection");
        }
        const WeakValue w = weak_value(pauli(Axis::Z), pre.normalized(), f);
        // arm amplitudes g e^{-+ i alpha W / 2} / sqrt(2 cosh(alpha v)):
        // the 2 cosh(alpha v) renormalization keeps the post-selected flux at
        // |<f|i>|^2, matching the alpha=0 reference.
        const Complex half_exp(0.0, -0.5 * c.alpha);
        const Complex w_c(w.re, w.im);
        const double norm = std::sqrt(2.0 * std::cosh(c.alpha * w.im));
        return ArmAmplitudes{g * std::exp(half_exp * w_c) / norm,
                             g * std::exp(-half_exp * w_c) / norm};
    }

    const StateVector evolved = interaction(model, c) * incident_state(0.0, pre);
    Complex arm_i = std::conj(f[0]) * evolved[0] + std::conj(f[1]) * evolved[1];
    Complex arm_ii = std::conj(f[0]) * evolved[2] + std::conj(f[1]) * evolved[3];
    if (model == EvolutionModel::FirstOrder) {
        // ||(1 - i a h / 2) psi||^2 = 1 + a^2/4 for h^2 = 1
        const double norm = std::sqrt(1.0 + 0.25 * c.alpha * c.alpha);
        arm_i /= norm;
        arm_ii /= norm;
    }
    return ArmAmplitudes{arm_i, arm_ii};
}

std::vector<BeamPair> interferogram(std::span<const double> chis, const StateVector& pre,
                                    const PostSelection& post, Coupling c,
                                    EvolutionModel model) {
    if (chis.empty()) throw std::invalid_argument("interferogram needs at least one chi");
    const ArmAmplitudes arms = post_selected_arms(pre, post, c, model);
    std::vector<BeamPair> out;
    out.reserve(chis.size());
    for (double chi : chis) {
        out.push_back(BeamPair{o_intensity(arms, chi), h_intensity(arms, chi)});
    }
    return out;
}

IntensityQuartet intensity_quartet(const StateVector& pre, const PostSelection& post,
                                   Coupling c, EvolutionModel model) {
    const ArmAmplitudes arms = post_selected_arms(pre, post, c, model);
    return IntensityQuartet{
        o_intensity(arms, 0.0),
        o_intensity(arms, kPi),
        o_intensity(arms, 0.5 * kPi),
        o_intensity(arms, 1.5 * kPi),
    };
}

PolarimeterPair polarimeter_pair(const StateVector& pre, const PostSelection& post,
                                 Coupling c) {
    const StateVector f = spin_state(post);
    const StateVector i = pre.normalized();
    const Operator plus = unitary_exp(pauli(Axis::Z), c.alpha);
    const Operator minus = unitary_exp(pauli(Axis::Z), -c.alpha);
    return PolarimeterPair{std::norm(matrix_element(f, plus, i)),
                           std::norm(matrix_element(f, minus, i))};
}

PolarimeterPair polarimeter_pair(const StateVector& pre, const PostSelection& post,
                                 Coupling c, EvolutionModel model) {
    switch (model) {
        case EvolutionModel::Exact:
            return polarimeter_pair(pre, post, c);
        case EvolutionModel::FirstOrder: {
            const StateVector f = spin_state(post);
            const StateVector i = pre.normalized();
            const Complex g = inner(f, i);
            const Complex m = matrix_element(f, pauli(Axis::Z), i);
            const Complex half(0.0, -0.5 * c.alpha);
            const double norm = 1.0 + 0.25 * c.alpha * c.alpha;
            return PolarimeterPair{std::norm(g + half * m) / norm,
                                   std::norm(g - half * m) / norm};
        }
        case EvolutionModel::ReExponentiated: {
            const StateVector f = spin_state(post);
            const StateVector i = pre.normalized();
            const Complex g = inner(f, i);
            if (std::norm(g) < kOrthogonalOverlapSq) {
                throw orthogonal_postselection_error(
                    "re-exponentiated evolution undefined for orthogonal post-selection");
            }
            const WeakValue w = weak_value(pauli(Axis::Z), i, f);
            const double av = c.alpha * w.im;
            const double flux = std::norm(g) / (2.0 * std::cosh(av));
            return PolarimeterPair{flux * std::exp(av), flux * std::exp(-av)};
        }
    }
    throw std::invalid_argument("unknown evolution model");
}

MeasurementSet ideal_measurements(const StateVector& pre, const PostSelection& post,
                                  Coupling c, EvolutionModel model) {
    return MeasurementSet{intensity_quartet(pre, post, c, model),
                          polarimeter_pair(pre, post, c, model)};
}

}  // namespace wvsim
