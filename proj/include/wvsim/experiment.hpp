#pragma once

#include <span>
#include <vector>

#include "wvsim/qmath.hpp"
#include "wvsim/states.hpp"
#include "wvsim/weak_value.hpp"

namespace wvsim {

/// Weak rotation angle per arm, radians. The paper's value is 15 deg.
struct Coupling {
    double alpha;
    explicit Coupling(double alpha_in);
    /// Above 0.5 rad the "weak" label stops meaning much; campaigns warn.
    bool beyond_weak_regime() const { return std::abs(alpha) > 0.5; }
};

/// How the weak interaction is applied.
///
/// Exact is unitary. FirstOrder truncates the exponential (norm-changing,
/// renormalized at readout). ReExponentiated applies the weak-value
/// exponent at the post-selected amplitude level and is also renormalized
/// at readout.
enum class EvolutionModel { Exact, FirstOrder, ReExponentiated };

/// O-beam intensities at the four phase-shifter settings that decompose
/// sigma_x^p (chi = 0, pi) and sigma_y^p (chi = pi/2, 3pi/2).
struct IntensityQuartet {
    double i_x_plus = 0.0;
    double i_x_minus = 0.0;
    double i_y_plus = 0.0;
    double i_y_minus = 0.0;
    double asymmetry_x() const { return (i_x_plus - i_x_minus) / (i_x_plus + i_x_minus); }
    double asymmetry_y() const { return (i_y_plus - i_y_minus) / (i_y_plus + i_y_minus); }
};

/// Single-path intensities, measured separately and without interference.
struct PolarimeterPair {
    double i_z_plus = 0.0;
    double i_z_minus = 0.0;
    double asymmetry() const { return (i_z_plus - i_z_minus) / (i_z_plus + i_z_minus); }
};

/// O- and H-beam intensities at one phase-shifter setting.
struct BeamPair {
    double i_o = 0.0;
    double i_h = 0.0;
};

/// Post-selected path amplitudes (arm I, arm II) with the incident phase
/// taken at chi = 0. All chi dependence is applied at readout.
struct ArmAmplitudes {
    Complex arm_i;
    Complex arm_ii;
};

/// (e^{i chi}|I> + |II>)/sqrt(2) (x) pre. Normalized.
StateVector incident_state(double chi, const StateVector& pre);

/// The 4x4 evolution operator for Exact and FirstOrder.
/// ReExponentiated is not an operator (it acts on post-selected amplitudes);
/// requesting it throws unsupported_model_error.
Operator interaction(EvolutionModel model, Coupling c);

/// Evolve at chi = 0, post-select the spin, return the path amplitudes.
/// FirstOrder and ReExponentiated amplitudes are renormalized so that
/// |arm_i|^2 + |arm_ii|^2 equals the post-selected flux (ReExponentiated:
/// |<psi_f|psi_i>|^2, dividing out 2 cosh(alpha Im W)).
ArmAmplitudes post_selected_arms(const StateVector& pre, const PostSelection& post,
                                 Coupling c, EvolutionModel model);

/// I_O and I_H for each chi. Intensities are probabilities per incident
/// particle: under the Exact model I_O + I_H equals the post-selection
/// probability, independent of chi.
std::vector<BeamPair> interferogram(std::span<const double> chis, const StateVector& pre,
                                    const PostSelection& post, Coupling c,
                                    EvolutionModel model);

/// I_O at chi in {0, pi, pi/2, 3pi/2}, evolved-at-chi=0 convention: under
/// the ReExponentiated model asymmetry_x = cos(a u)/cosh(a v) and
/// asymmetry_y = sin(a u)/cosh(a v) with W = u + iv.
IntensityQuartet intensity_quartet(const StateVector& pre, const PostSelection& post,
                                   Coupling c, EvolutionModel model);

/// |<psi_f| exp(-+ i alpha sigma_z / 2) |psi_i>|^2 per path; single-path
/// exact evolutions, no interference, well-defined even for orthogonal
/// post-selection.
PolarimeterPair polarimeter_pair(const StateVector& pre, const PostSelection& post,
                                 Coupling c);

/// Model-consistent polarimeter intensities (the Exact overload above is the
/// physical instrument; this one keeps sweeps self-consistent, e.g. the
/// ReExponentiated pair has asymmetry tanh(alpha Im W) exactly).
PolarimeterPair polarimeter_pair(const StateVector& pre, const PostSelection& post,
                                 Coupling c, EvolutionModel model);

/// The six ideal intensities a sweep point feeds to the extraction.
struct MeasurementSet {
    IntensityQuartet quartet;
    PolarimeterPair pair;
};

MeasurementSet ideal_measurements(const StateVector& pre, const PostSelection& post,
                                  Coupling c, EvolutionModel model);

}  // namespace wvsim
