#pragma once

#include <optional>
#include <span>
#include <utility>

#include "wvsim/experiment.hpp"

namespace wvsim {

/// Result of the linearized least-squares fit
///   counts = mean + amplitude * cos(chi + phase_offset).
struct FringeFit {
    double mean = 0.0;
    double amplitude = 0.0;      // >= 0
    double phase_offset = 0.0;   // wrapped to [0, 2pi)
    double contrast_est = 0.0;   // amplitude / mean
    double residual_rms = 0.0;
};

/// Fit a reference or weak scan. Points are (chi, counts). Requires at
/// least 5 points spanning at least 1.5 pi of chi and a full-rank design;
/// otherwise throws fit_failure_error. Linear in
/// (mean, amplitude cos(offset), amplitude sin(offset)) — globally optimal,
/// no iteration.
FringeFit fit_fringe(std::span<const std::pair<double, double>> scan);

struct AsymmetryResult {
    double ratio = 0.0;  // in [-1, 1]
    bool clamped = false;
};

/// (i+ - i-)/(i+ + i- - 2 b) after subtracting the background b from each
/// side; ratios pushed outside [-1, 1] by noise are clipped with the flag
/// set. Nonpositive denominator throws no_signal_error.
AsymmetryResult asymmetry(double i_plus, double i_minus, double background);

/// How quartet ratios are normalized on the contrast before inversion.
/// Paper: correct the x (modulus) channel only; Uniform: correct x and y —
/// the recommended choice for simulation studies; None: invert raw ratios.
enum class ContrastPolicy { Paper, Uniform, None };

struct ExtractionOptions {
    ContrastPolicy policy = ContrastPolicy::Paper;
    /// Instrument contrast estimate used by the Paper/Uniform corrections;
    /// the weak-fringe visibility loss 1/cosh(alpha Im W) is inferred from
    /// the polarimeter pair and folded in automatically.
    std::optional<double> contrast;
    double background_quartet = 0.0;  // counts per quartet setting
    double background_pair = 0.0;     // counts per polarimeter setting
    /// Off for noiseless intensities (standard errors reported as 0).
    bool poisson_errors = true;
};

/// Clamp / boundary flags per component.
enum ClampBits : unsigned {
    kClampRe = 1u << 0,
    kClampIm = 1u << 1,
    kClampModulus = 1u << 2,
    kBoundaryFallbackRe = 1u << 3,
    kBoundaryFallbackIm = 1u << 4,
    kBoundaryFallbackModulus = 1u << 5,
};

struct WeakValueEstimate {
    double re = 0.0;
    double im = 0.0;
    double modulus = 0.0;  // >= 0
    double se_re = 0.0;
    double se_im = 0.0;
    double se_modulus = 0.0;
    unsigned flags = 0;  // ClampBits
    bool clamped() const { return (flags & (kClampRe | kClampIm | kClampModulus)) != 0; }
};

/// Invert measured counts into the weak value:
///   im      = atanh(r_z) / alpha
///   re      = arcsin(r_y') / alpha
///   modulus = hypot(arccos(r_x'), atanh(r_z)) / alpha
/// where r' are the policy-corrected ratios. The x channel alone carries
/// |Re W|; combining it with the polarimeter channel restores the modulus
/// whenever Im W != 0 and reduces to arccos(r_x')/alpha when r_z = 0.
/// Requires alpha != 0; |r_z| >= 1 throws atanh_divergence_error.
WeakValueEstimate extract(const IntensityQuartet& quartet_counts,
                          const PolarimeterPair& pair_counts, Coupling c,
                          const ExtractionOptions& options = {});

enum class InverseKind { Arcsin, Atanh, Arccos };

struct ErrorBar {
    double value = 0.0;
    bool boundary_fallback = false;
};

/// Poisson delta-method standard error of the inverted component:
/// sigma_ratio = sqrt(4 i+ i- / (i+ + i-)^3), then divided by alpha and the
/// local slope of the inverse function; near |r| = 1 a one-sided finite
/// difference of the inverse replaces the diverging slope formula.
ErrorBar error_bars(double i_plus, double i_minus, Coupling c, InverseKind kind);

}  // namespace wvsim
