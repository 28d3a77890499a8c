#pragma once

#include "wpt/linalg.hpp"
#include "wpt/schedules.hpp"
#include "wpt/state.hpp"

#include <utility>

namespace wpt {

/// Physical parameters of the source/drain pair.
struct CoilPair {
    double gamma_s = 0.0;   ///< source intrinsic loss, 1/s
    double gamma_d = 0.0;   ///< drain intrinsic loss, 1/s
    double gamma_w = 0.0;   ///< work extraction from the drain, 1/s
    double omega_s0 = 1e6;  ///< source resonance, rad/s (lab-frame oracle only)
    double omega_d0 = 1e6;  ///< drain resonance, rad/s (lab-frame oracle only)
    double l_s = 1e-4;      ///< source inductance, H
    double l_d = 1e-4;      ///< drain inductance, H

    friend bool operator==(const CoilPair&, const CoilPair&) = default;

    /// Throws InvalidParameter on negative loss rates.
    void validate() const;
};

enum class Frame { Rotating, TQD, Lab };

/// Hermitian 2×2 Hamiltonian in rad/s. Losses are never stored here.
struct Hamiltonian2 {
    Mat2 h;
    Frame frame = Frame::Rotating;
};

/// diag(Γs, Γd + Γw).
struct DissipationMatrix {
    double g11 = 0.0;
    double g22 = 0.0;

    Mat2 matrix() const { return Mat2::diag(g11, g22); }
};

/// Real orthogonal matrix whose columns are B₊ = (cos Θ/2, −sin Θ/2) and
/// B₋ = (sin Θ/2, cos Θ/2) in the (b_s, b_d) basis.
struct Rotation2 {
    double r11 = 1.0, r12 = 0.0, r21 = 0.0, r22 = 1.0;

    Mat2 matrix() const { return {r11, r12, r21, r22}; }
    Rotation2 transpose() const { return {r11, r21, r12, r22}; }
};

/// [[Δ/2, −κ], [−κ, −Δ/2]]
Hamiltonian2 rotating_hamiltonian(const DriveSchedule& schedule, double t);

/// [[(Δ−φ̇)/2, −κ_eff], [−κ_eff, −(Δ−φ̇)/2]], expressed in the phase-rotated
/// basis described by CDTerms::frame_phase.
Hamiltonian2 tqd_hamiltonian(const DriveSchedule& schedule, double t, const CdOptions& opts = {});

/// Static two-coil Hamiltonian [[−ωs, −κ], [−κ, −ωd]] without the rotating frame.
Hamiltonian2 lab_hamiltonian(const CoilPair& coils, double kappa);

DissipationMatrix dissipation_matrix(const CoilPair& coils);

Rotation2 adiabatic_basis(double kappa, double delta);

/// Populations (p₊, p₋) of ρ in the instantaneous adiabatic basis.
/// Throws InvalidState when ρ is not Hermitian.
std::pair<double, double> adiabatic_populations(const DensityMatrix2& rho, double kappa, double delta);

/// Maps a state from the TQD rotated basis back to the diabatic basis:
/// ρ = V† ρ' V with V = diag(e^{jφ/2}, e^{−jφ/2}).
DensityMatrix2 undo_frame_rotation(const DensityMatrix2& rho_rotated, double frame_phase);

} // namespace wpt
