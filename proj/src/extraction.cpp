#include "wvsim/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wvsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// |r| at or above this engages the finite-difference error fallback.
constexpr double kBoundaryRatio = 0.999;

double clamp_ratio(double r, bool& clamped) {
    if (r > 1.0) {
        clamped = true;
        return 1.0;
    }
    if (r < -1.0) {
        clamped = true;
        return -1.0;
    }
    return r;
}

double inverse_fn(InverseKind kind, double r) {
    switch (kind) {
        case InverseKind::Arcsin:
            return std::asin(r);
        case InverseKind::Atanh:
            return std::atanh(r);
        case InverseKind::Arccos:
            return std::acos(r);
    }
    throw std::invalid_argument("unknown inverse kind");
}

// Delta-method sigma of the count asymmetry of a Poisson pair.
double sigma_ratio(double i_plus, double i_minus) {
    const double total = i_plus + i_minus;
    if (!(total > 0.0)) throw no_signal_error("zero total counts");
    const double prod = std::max(i_plus, 0.0) * std::max(i_minus, 0.0);
    return std::sqrt(4.0 * prod / (total * total * total));
}

// sigma of the inverted angle (not yet divided by alpha); near the domain
// boundary the slope diverges and a one-sided finite difference of the
// inverse replaces it.
double angle_sigma(InverseKind kind, double r, double sr, bool& fallback) {
    const double mag = std::abs(r);
    if (mag >= kBoundaryRatio || mag + sr >= 1.0) {
        fallback = true;
        const double edge = kind == InverseKind::Atanh ? 1.0 - 1e-12 : 1.0;
        const double r0 = std::clamp(r, -edge, edge);
        const double sign = r0 >= 0.0 ? 1.0 : -1.0;
        const double r1 = std::clamp(r0 - sign * sr, -edge, edge);
        return std::abs(inverse_fn(kind, r0) - inverse_fn(kind, r1));
    }
    switch (kind) {
        case InverseKind::Arcsin:
        case InverseKind::Arccos:
            return sr / std::sqrt(1.0 - r * r);
        case InverseKind::Atanh:
            return sr / (1.0 - r * r);
    }
    throw std::invalid_argument("unknown inverse kind");
}

}  // namespace

FringeFit fit_fringe(std::span<const std::pair<double, double>> scan) {
    const size_t n = scan.size();
    if (n < 5) throw fit_failure_error("need at least 5 scan points");
    double chi_min = scan[0].first;
    double chi_max = scan[0].first;
    for (const auto& [chi, counts] : scan) {
        chi_min = std::min(chi_min, chi);
        chi_max = std::max(chi_max, chi);
    }
    if (chi_max - chi_min < 1.5 * kPi) {
        throw fit_failure_error("scan must span at least 1.5 pi of chi");
    }

    // Normal equations for counts = m + p cos(chi) + q sin(chi).
    double s_c = 0, s_s = 0, s_cc = 0, s_ss = 0, s_cs = 0;
    double s_y = 0, s_yc = 0, s_ys = 0;
    for (const auto& [chi, y] : scan) {
        const double c = std::cos(chi);
        const double s = std::sin(chi);
        s_c += c;
        s_s += s;
        s_cc += c * c;
        s_ss += s * s;
        s_cs += c * s;
        s_y += y;
        s_yc += y * c;
        s_ys += y * s;
    }
    const double g00 = static_cast<double>(n);
    const double det = g00 * (s_cc * s_ss - s_cs * s_cs) - s_c * (s_c * s_ss - s_cs * s_s) +
                       s_s * (s_c * s_cs - s_cc * s_s);
    if (!(std::abs(det) > 1e-9 * g00 * g00 * g00)) {
        throw fit_failure_error("rank-deficient fringe design");
    }

    auto det3 = [](double a00, double a01, double a02, double a10, double a11, double a12,
                   double a20, double a21, double a22) {
        return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
               a02 * (a10 * a21 - a11 * a20);
    };
    const double m = det3(s_y, s_c, s_s, s_yc, s_cc, s_cs, s_ys, s_cs, s_ss) / det;
    const double p = det3(g00, s_y, s_s, s_c, s_yc, s_cs, s_s, s_ys, s_ss) / det;
    const double q = det3(g00, s_c, s_y, s_c, s_cc, s_yc, s_s, s_cs, s_ys) / det;

    FringeFit fit;
    fit.mean = m;
    fit.amplitude = std::hypot(p, q);
    // a cos(chi + d) = a cos(d) cos(chi) - a sin(d) sin(chi)
    double offset = std::atan2(-q, p);
    if (offset < 0.0) offset += kTwoPi;
    fit.phase_offset = fit.amplitude > 0.0 ? offset : 0.0;
    if (!(m > 0.0)) throw fit_failure_error("fitted fringe mean is not positive");
    fit.contrast_est = fit.amplitude / m;

    double ss_res = 0.0;
    for (const auto& [chi, y] : scan) {
        const double model = m + p * std::cos(chi) + q * std::sin(chi);
        ss_res += (y - model) * (y - model);
    }
    fit.residual_rms = std::sqrt(ss_res / static_cast<double>(n));
    return fit;
}

AsymmetryResult asymmetry(double i_plus, double i_minus, double background) {
    const double denom = i_plus + i_minus - 2.0 * background;
    if (!(denom > 0.0)) {
        throw no_signal_error("no counts left after background subtraction");
    }
    AsymmetryResult out;
    out.ratio = clamp_ratio((i_plus - i_minus) / denom, out.clamped);
    return out;
}

WeakValueEstimate extract(const IntensityQuartet& quartet_counts,
                          const PolarimeterPair& pair_counts, Coupling c,
                          const ExtractionOptions& options) {
    if (c.alpha == 0.0) throw std::invalid_argument("extraction requires alpha != 0");
    const double contrast = options.contrast.value_or(1.0);
    if (!(contrast > 0.0 && contrast <= 1.0)) {
        throw std::invalid_argument("contrast correction must lie in (0, 1]");
    }

    const AsymmetryResult ax =
        asymmetry(quartet_counts.i_x_plus, quartet_counts.i_x_minus, options.background_quartet);
    const AsymmetryResult ay =
        asymmetry(quartet_counts.i_y_plus, quartet_counts.i_y_minus, options.background_quartet);
    const AsymmetryResult az =
        asymmetry(pair_counts.i_z_plus, pair_counts.i_z_minus, options.background_pair);
    if (std::abs(az.ratio) >= 1.0) {
        throw atanh_divergence_error(
            "polarimeter asymmetry at or beyond 1: imaginary part unmeasurable at this alpha");
    }

    // Weak-fringe visibility: instrument contrast times the physical
    // 1/cosh(alpha Im W) reduction, the latter read off the polarimeter pair.
    const double vis = std::sqrt(1.0 - az.ratio * az.ratio);
    double denom_x = 1.0;
    double denom_y = 1.0;
    switch (options.policy) {
        case ContrastPolicy::None:
            break;
        case ContrastPolicy::Paper:
            denom_x = contrast * vis;
            break;
        case ContrastPolicy::Uniform:
            denom_x = contrast * vis;
            denom_y = contrast * vis;
            break;
    }

    WeakValueEstimate est;
    if (ax.clamped) est.flags |= kClampModulus;
    if (ay.clamped) est.flags |= kClampRe;

    bool cx = false;
    bool cy = false;
    const double rx = clamp_ratio(ax.ratio / denom_x, cx);
    const double ry = clamp_ratio(ay.ratio / denom_y, cy);
    if (cx) est.flags |= kClampModulus;
    if (cy) est.flags |= kClampRe;
    const double rz = az.ratio;

    const double angle_y = std::asin(ry);
    const double angle_x = std::acos(rx);
    const double angle_z = std::atanh(rz);

    est.re = angle_y / c.alpha;
    est.im = angle_z / c.alpha;
    est.modulus = std::hypot(angle_x, angle_z) / std::abs(c.alpha);

    if (options.poisson_errors) {
        const double bq = options.background_quartet;
        const double bp = options.background_pair;
        const double sx = sigma_ratio(quartet_counts.i_x_plus - bq,
                                      quartet_counts.i_x_minus - bq) / denom_x;
        const double sy = sigma_ratio(quartet_counts.i_y_plus - bq,
                                      quartet_counts.i_y_minus - bq) / denom_y;
        const double sz = sigma_ratio(pair_counts.i_z_plus - bp, pair_counts.i_z_minus - bp);

        bool fb_re = false, fb_im = false, fb_mod = false;
        const double sig_angle_y = angle_sigma(InverseKind::Arcsin, ry, sy, fb_re);
        const double sig_angle_z = angle_sigma(InverseKind::Atanh, rz, sz, fb_im);
        const double sig_angle_x = angle_sigma(InverseKind::Arccos, rx, sx, fb_mod);
        if (fb_re) est.flags |= kBoundaryFallbackRe;
        if (fb_im) est.flags |= kBoundaryFallbackIm;
        if (fb_mod) est.flags |= kBoundaryFallbackModulus;

        const double a = std::abs(c.alpha);
        est.se_re = sig_angle_y / a;
        est.se_im = sig_angle_z / a;
        const double h = std::hypot(angle_x, angle_z);
        est.se_modulus = h > 0.0
                             ? std::hypot(angle_x * sig_angle_x, angle_z * sig_angle_z) / (a * h)
                             : std::hypot(sig_angle_x, sig_angle_z) / a;
    }
    return est;
}

ErrorBar error_bars(double i_plus, double i_minus, Coupling c, InverseKind kind) {
    if (c.alpha == 0.0) throw std::invalid_argument("error propagation requires alpha != 0");
    const double total = i_plus + i_minus;
    if (!(total > 0.0)) throw no_signal_error("zero total counts");
    const double r = (i_plus - i_minus) / total;
    const double sr = sigma_ratio(i_plus, i_minus);
    ErrorBar out;
    out.value = angle_sigma(kind, r, sr, out.boundary_fallback) / std::abs(c.alpha);
    return out;
}

}  // namespace wvsim
