#pragma once

#include "wvsim/qmath.hpp"
#include "wvsim/states.hpp"

namespace wvsim {

/// Weak values below this pre/post overlap-squared are treated as undefined.
inline constexpr double kOrthogonalOverlapSq = 1e-12;

struct WeakValue {
    double re = 0.0;
    double im = 0.0;
    double modulus() const;
};

/// Sign convention for the imaginary part of the closed form.
///
/// AsDerived follows from evaluating the defining ratio with the ket
/// convention e^{+i phi} on |Sz;->, giving +sin(phi) sin(theta) in the
/// numerator; AsPrinted conjugates the imaginary part (the opposite
/// Larmor-precession sense). The figures for phi in {0, pi/2} differ only by
/// reflection of the Im curve.
enum class PhaseSign { AsDerived, AsPrinted };

/// <post|observable|pre> / <post|pre>. Both states must be normalized, dim 2.
/// Throws orthogonal_postselection_error when |<post|pre>|^2 < 1e-12.
WeakValue weak_value(const Operator& observable, const StateVector& pre,
                     const StateVector& post);

/// Closed form for observable sigma_z, pre-selection |Sx;+>:
///   (cos(theta) + i sin(theta) sin(phi)) / (1 + sin(theta) cos(phi)).
/// Agrees with weak_value() to 1e-12 everywhere the overlap is nonzero.
WeakValue closed_form(const PostSelection& p, PhaseSign sign = PhaseSign::AsDerived);

}  // namespace wvsim
