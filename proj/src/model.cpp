#include "wpt/model.hpp"

#include "wpt/error.hpp"

#include <cmath>

namespace wpt {

void CoilPair::validate() const
{
    if (!(gamma_s >= 0.0) || !(gamma_d >= 0.0) || !(gamma_w >= 0.0))
        throw InvalidParameter("loss rates must be non-negative");
}

Hamiltonian2 rotating_hamiltonian(const DriveSchedule& schedule, double t)
{
    const ScheduleSample s = schedule.at(t);
    return {{0.5 * s.delta, -s.kappa, -s.kappa, -0.5 * s.delta}, Frame::Rotating};
}

Hamiltonian2 tqd_hamiltonian(const DriveSchedule& schedule, double t, const CdOptions& opts)
{
    const CDTerms cd = counterdiabatic_terms(schedule, t, opts);
    return {{0.5 * cd.delta_eff, -cd.kappa_eff, -cd.kappa_eff, -0.5 * cd.delta_eff}, Frame::TQD};
}

Hamiltonian2 lab_hamiltonian(const CoilPair& coils, double kappa)
{
    return {{-coils.omega_s0, -kappa, -kappa, -coils.omega_d0}, Frame::Lab};
}

DissipationMatrix dissipation_matrix(const CoilPair& coils)
{
    return {coils.gamma_s, coils.gamma_d + coils.gamma_w};
}

Rotation2 adiabatic_basis(double kappa, double delta)
{
    const double half = 0.5 * mixing_angle(kappa, delta);
    const double c = std::cos(half);
    const double s = std::sin(half);
    return {c, s, -s, c};
}

std::pair<double, double> adiabatic_populations(const DensityMatrix2& rho, double kappa, double delta)
{
    if (!rho.is_hermitian(1e-9 * std::max(1.0, max_abs(rho.m))))
        throw InvalidState("density matrix is not Hermitian");
    const Mat2 u = adiabatic_basis(kappa, delta).matrix();
    const Mat2 in_basis = u.adjoint() * rho.m * u;
    return {in_basis.a11.real(), in_basis.a22.real()};
}

DensityMatrix2 undo_frame_rotation(const DensityMatrix2& rho_rotated, double frame_phase)
{
    const cplx half = std::polar(1.0, 0.5 * frame_phase);
    const Mat2 v = Mat2::diag(half, std::conj(half));
    return {v.adjoint() * rho_rotated.m * v};
}

} // namespace wpt
