#pragma once

#include <array>
#include <complex>
#include <initializer_list>

#include "wvsim/errors.hpp"

namespace wvsim {

using Complex = std::complex<double>;

// Absolute tolerances for the small-dimension algebra in this project.
// Dimensions are <= 4, so rounding stays tiny and the tolerances are fixed.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kRealnessTol = 1e-10;

/// Complex amplitude vector of dimension 2 (spin or path) or 4 (joint).
///
/// Joint basis order is fixed project-wide as path (x) spin:
///   index 0 = |I,up>, 1 = |I,dn>, 2 = |II,up>, 3 = |II,dn>.
class StateVector {
  public:
    explicit StateVector(int dim);
    StateVector(std::initializer_list<Complex> amps);

    int dim() const { return dim_; }
    Complex& operator[](int k) { return amps_[static_cast<size_t>(k)]; }
    const Complex& operator[](int k) const { return amps_[static_cast<size_t>(k)]; }

    double norm_sq() const;
    bool is_normalized(double tol = kAlgebraTol) const;
    /// Returns the unit-norm copy; throws undefined_state_error on zero norm.
    StateVector normalized() const;
    /// Entry-wise finiteness check (no NaN/Inf anywhere).
    bool is_finite() const;

  private:
    int dim_;
    std::array<Complex, 4> amps_{};
};

/// Small dense complex matrix (2x2 or 4x4) with optional Hermitian/unitary
/// tags. Tags are only set by factories that verified the property.
class Operator {
  public:
    explicit Operator(int dim);

    static Operator identity(int dim);
    /// Row-major construction; the list length must be dim*dim.
    static Operator from_rows(int dim, std::initializer_list<Complex> entries);

    int dim() const { return dim_; }
    Complex& at(int r, int c) { return e_[static_cast<size_t>(r * dim_ + c)]; }
    const Complex& at(int r, int c) const { return e_[static_cast<size_t>(r * dim_ + c)]; }

    bool hermitian_tag() const { return hermitian_; }
    bool unitary_tag() const { return unitary_; }
    /// Verifies the property within kAlgebraTol, then sets the tag.
    /// Throws std::invalid_argument if the entries do not satisfy it.
    Operator& tag_hermitian();
    Operator& tag_unitary();

    bool is_hermitian(double tol = kAlgebraTol) const;
    bool is_unitary(double tol = kAlgebraTol) const;
    bool is_finite() const;

    Operator dagger() const;
    Operator operator*(const Operator& rhs) const;
    Operator operator+(const Operator& rhs) const;
    Operator operator-(const Operator& rhs) const;
    StateVector operator*(const StateVector& s) const;

    /// Largest singular value is overkill here; max column-sum norm is enough
    /// for the identity checks this project does.
    double max_abs_deviation_from(const Operator& rhs) const;

  private:
    int dim_;
    std::array<Complex, 16> e_{};
    bool hermitian_ = false;
    bool unitary_ = false;
};

/// Kronecker product of two 2x2 operators in the fixed basis order
/// path (x) spin. Throws std::invalid_argument unless both inputs are dim 2.
Operator tensor(const Operator& a, const Operator& b);

/// <bra|ket>. Dimensions must match.
Complex inner(const StateVector& bra, const StateVector& ket);

/// <bra|o|ket>.
Complex matrix_element(const StateVector& bra, const Operator& o, const StateVector& ket);

/// <s|o|s> / <s|s>, returned as the real part. For Hermitian o the imaginary
/// residue stays below kRealnessTol. Throws undefined_state_error on a
/// zero-norm state.
double expectation(const StateVector& s, const Operator& o);

/// exp(-i * angle * h / 2) for the two closed-form classes this experiment
/// needs: diagonal Hermitian h (elementwise phases), and traceless 2x2
/// Hermitian h with h^2 = I (Pauli form cos(angle/2) I - i sin(angle/2) h).
/// Throws std::invalid_argument for non-Hermitian input or shapes outside
/// these classes.
Operator unitary_exp(const Operator& h, double angle);

}  // namespace wvsim
