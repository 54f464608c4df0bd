#include "wvsim/weak_value.hpp"

#include <cmath>
#include <stdexcept>

namespace wvsim {

double WeakValue::modulus() const { return std::hypot(re, im); }

WeakValue weak_value(const Operator& observable, const StateVector& pre,
                     const StateVector& post) {
    if (observable.dim() != 2 || pre.dim() != 2 || post.dim() != 2) {
        throw std::invalid_argument("weak_value expects dim-2 observable and states");
    }
    const Complex overlap = inner(post, pre);
    if (std::norm(overlap) < kOrthogonalOverlapSq) {
        throw orthogonal_postselection_error(
            "post-selection is orthogonal to the pre-selected state");
    }
    const Complex w = matrix_element(post, observable, pre) / overlap;
    return WeakValue{w.real(), w.imag()};
}

WeakValue closed_form(const PostSelection& p, PhaseSign sign) {
    const double denom = 1.0 + std::sin(p.theta) * std::cos(p.phi);
    if (denom <= kOrthogonalOverlapSq) {
        throw orthogonal_postselection_error(
            "closed form undefined: post-selection orthogonal to |Sx;+>");
    }
    const double re = std::cos(p.theta) / denom;
    double im = std::sin(p.theta) * std::sin(p.phi) / denom;
    if (sign == PhaseSign::AsPrinted) im = -im;
    return WeakValue{re, im};
}

}  // namespace wvsim
