#include "wvsim/qmath.hpp"

#include <cmath>
#include <stdexcept>

namespace wvsim {

namespace {

void check_dim(int dim) {
    if (dim != 2 && dim != 4) {
        throw std::invalid_argument("dimension must be 2 or 4");
    }
}

}  // namespace

StateVector::StateVector(int dim) : dim_(dim) { check_dim(dim); }

StateVector::StateVector(std::initializer_list<Complex> amps)
    : dim_(static_cast<int>(amps.size())) {
    check_dim(dim_);
    int k = 0;
    for (const Complex& a : amps) amps_[static_cast<size_t>(k++)] = a;
}

double StateVector::norm_sq() const {
    double n = 0.0;
    for (int k = 0; k < dim_; ++k) n += std::norm(amps_[static_cast<size_t>(k)]);
    return n;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm_sq() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
    const double n = norm_sq();
    if (n <= 0.0 || !std::isfinite(n)) {
        throw undefined_state_error("cannot normalize a zero-norm state");
    }
    StateVector out(dim_);
    const double inv = 1.0 / std::sqrt(n);
    for (int k = 0; k < dim_; ++k) out[k] = amps_[static_cast<size_t>(k)] * inv;
    return out;
}

bool StateVector::is_finite() const {
    for (int k = 0; k < dim_; ++k) {
        const Complex& a = amps_[static_cast<size_t>(k)];
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    }
    return true;
}

Operator::Operator(int dim) : dim_(dim) { check_dim(dim); }

Operator Operator::identity(int dim) {
    Operator out(dim);
    for (int k = 0; k < dim; ++k) out.at(k, k) = 1.0;
    out.hermitian_ = true;
    out.unitary_ = true;
    return out;
}

Operator Operator::from_rows(int dim, std::initializer_list<Complex> entries) {
    Operator out(dim);
    if (static_cast<int>(entries.size()) != dim * dim) {
        throw std::invalid_argument("entry count does not match dimension");
    }
    int k = 0;
    for (const Complex& v : entries) out.e_[static_cast<size_t>(k++)] = v;
    return out;
}

Operator& Operator::tag_hermitian() {
    if (!is_hermitian()) throw std::invalid_argument("entries are not Hermitian");
    hermitian_ = true;
    return *this;
}

Operator& Operator::tag_unitary() {
    if (!is_unitary()) throw std::invalid_argument("entries are not unitary");
    unitary_ = true;
    return *this;
}

bool Operator::is_hermitian(double tol) const {
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
        }
    }
    return true;
}

bool Operator::is_unitary(double tol) const {
    return (dagger() * *this).max_abs_deviation_from(identity(dim_)) <= tol;
}

bool Operator::is_finite() const {
    for (int k = 0; k < dim_ * dim_; ++k) {
        const Complex& v = e_[static_cast<size_t>(k)];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

Operator Operator::dagger() const {
    Operator out(dim_);
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) out.at(r, c) = std::conj(at(c, r));
    }
    return out;
}

Operator Operator::operator*(const Operator& rhs) const {
    if (rhs.dim_ != dim_) throw std::invalid_argument("operator dimension mismatch");
    Operator out(dim_);
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            Complex acc = 0.0;
            for (int k = 0; k < dim_; ++k) acc += at(r, k) * rhs.at(k, c);
            out.at(r, c) = acc;
        }
    }
    return out;
}

Operator Operator::operator+(const Operator& rhs) const {
    if (rhs.dim_ != dim_) throw std::invalid_argument("operator dimension mismatch");
    Operator out(dim_);
    for (int k = 0; k < dim_ * dim_; ++k) {
        out.e_[static_cast<size_t>(k)] = e_[static_cast<size_t>(k)] + rhs.e_[static_cast<size_t>(k)];
    }
    return out;
}

Operator Operator::operator-(const Operator& rhs) const {
    if (rhs.dim_ != dim_) throw std::invalid_argument("operator dimension mismatch");
    Operator out(dim_);
    for (int k = 0; k < dim_ * dim_; ++k) {
        out.e_[static_cast<size_t>(k)] = e_[static_cast<size_t>(k)] - rhs.e_[static_cast<size_t>(k)];
    }
    return out;
}

StateVector Operator::operator*(const StateVector& s) const {
    if (s.dim() != dim_) throw std::invalid_argument("operator/state dimension mismatch");
    StateVector out(dim_);
    for (int r = 0; r < dim_; ++r) {
        Complex acc = 0.0;
        for (int c = 0; c < dim_; ++c) acc += at(r, c) * s[c];
        out[r] = acc;
    }
    return out;
}

double Operator::max_abs_deviation_from(const Operator& rhs) const {
    double worst = 0.0;
    for (int k = 0; k < dim_ * dim_; ++k) {
        worst = std::max(worst,
                         std::abs(e_[static_cast<size_t>(k)] - rhs.e_[static_cast<size_t>(k)]));
    }
    return worst;
}

Operator tensor(const Operator& a, const Operator& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("tensor expects two 2x2 operators");
    }
    Operator out(4);
    for (int pr = 0; pr < 2; ++pr) {
        for (int sr = 0; sr < 2; ++sr) {
            for (int pc = 0; pc < 2; ++pc) {
                for (int sc = 0; sc < 2; ++sc) {
                    out.at(pr * 2 + sr, pc * 2 + sc) = a.at(pr, pc) * b.at(sr, sc);
                }
            }
        }
    }
    return out;
}

Complex inner(const StateVector& bra, const StateVector& ket) {
    if (bra.dim() != ket.dim()) throw std::invalid_argument("state dimension mismatch");
    Complex acc = 0.0;
    for (int k = 0; k < bra.dim(); ++k) acc += std::conj(bra[k]) * ket[k];
    return acc;
}

Complex matrix_element(const StateVector& bra, const Operator& o, const StateVector& ket) {
    return inner(bra, o * ket);
}

double expectation(const StateVector& s, const Operator& o) {
    const double n = s.norm_sq();
    if (n <= 0.0 || !std::isfinite(n)) {
        throw undefined_state_error("expectation of a zero-norm state is undefined");
    }
    return (matrix_element(s, o, s) / n).real();
}

Operator unitary_exp(const Operator& h, double angle) {
    if (!h.is_hermitian()) {
        throw std::invalid_argument("unitary_exp requires a Hermitian generator");
    }
    const int d = h.dim();

    bool diagonal = true;
    for (int r = 0; r < d && diagonal; ++r) {
        for (int c = 0; c < d; ++c) {
            if (r != c && std::abs(h.at(r, c)) > kAlgebraTol) {
                diagonal = false;
                break;
            }
        }
    }

    if (diagonal) {
        Operator out(d);
        for (int k = 0; k < d; ++k) {
            out.at(k, k) = std::polar(1.0, -0.5 * angle * h.at(k, k).real());
        }
        return out.tag_unitary();
    }

    // Pauli closed form: h traceless with h^2 = I.
    if (d == 2 && std::abs(h.at(0, 0) + h.at(1, 1)) <= kAlgebraTol &&
        (h * h).max_abs_deviation_from(Operator::identity(2)) <= kAlgebraTol) {
        const double half = 0.5 * angle;
        Operator out = Operator::identity(2);
        const Complex c = std::cos(half);
        const Complex mis(0.0, -std::sin(half));
        for (int r = 0; r < 2; ++r) {
            for (int cidx = 0; cidx < 2; ++cidx) {
                out.at(r, cidx) = c * (r == cidx ? 1.0 : 0.0) + mis * h.at(r, cidx);
            }
        }
        return out.tag_unitary();
    }

    throw std::invalid_argument(
        "unitary_exp supports diagonal generators and traceless 2x2 Pauli-form generators only");
}

}  // namespace wvsim
