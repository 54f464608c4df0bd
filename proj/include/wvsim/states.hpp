#pragma once

#include <optional>

#include "wvsim/qmath.hpp"

namespace wvsim {

/// Bloch angles of the post-selected spin ket
///   |psi_f(theta, phi)> = cos(theta/2)|Sz;+> + sin(theta/2) e^{i phi}|Sz;->.
/// theta is wrapped into [-pi, pi] and phi into [0, 2pi) on construction;
/// afterwards both are plain stored values.
struct PostSelection {
    double theta;
    double phi;
    PostSelection(double theta_in, double phi_in);
};

/// Physical parameters whose product sets the phase-shifter phase:
/// chi = particle_density * scattering_length * wavelength * thickness.
/// Units must be consistent so the product is radians.
struct PhaseShifterRecord {
    double particle_density;
    double scattering_length;
    double wavelength;
    double thickness;
    double chi() const {
        return particle_density * scattering_length * wavelength * thickness;
    }
};

/// Relative path phase chi, either set directly or via the physical record.
class PhaseShifterSetting {
  public:
    explicit PhaseShifterSetting(double chi) : chi_(chi) {}
    explicit PhaseShifterSetting(const PhaseShifterRecord& record)
        : chi_(record.chi()), record_(record) {}

    double chi() const { return chi_; }
    const std::optional<PhaseShifterRecord>& record() const { return record_; }
    /// If the physical record is present, chi must equal its product within tol.
    bool consistent(double tol = kAlgebraTol) const;

  private:
    double chi_;
    std::optional<PhaseShifterRecord> record_;
};

enum class Axis { X, Y, Z };
enum class Subsystem { Spin, Path };

/// 2x2 Pauli matrix, Hermitian and unitary.
Operator pauli(Axis axis);

/// The pre-selected spin state |Sx;+> = (|up> + |dn>)/sqrt(2).
StateVector spin_x_plus();

/// cos(theta/2)|Sz;+> + sin(theta/2) e^{i phi}|Sz;->, normalized.
StateVector spin_state(const PostSelection& p);

/// Rank-1 projector onto (|I> + e^{i chi}|II>)/sqrt(2); Hermitian and
/// idempotent. chi = 0 gives the projector onto |Px;+>.
Operator path_projector(double chi);

/// Pauli on the named subsystem tensored with identity on the other, in the
/// fixed basis order path (x) spin.
Operator lifted_pauli(Axis axis, Subsystem subsystem);

}  // namespace wvsim
