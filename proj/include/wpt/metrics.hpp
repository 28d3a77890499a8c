#pragma once

#include "wpt/dynamics.hpp"

#include <span>
#include <string>

namespace wpt {

struct EfficiencyReport {
    double eta = 0.0;
    double integral_source = 0.0;  ///< ∫ρ_ss dt, s
    double integral_drain = 0.0;   ///< ∫ρ_dd dt, s
    double window = 0.0;
    std::string protocol;
};

/// η = Γw∫ρ_dd / (Γs∫ρ_ss + (Γd+Γw)∫ρ_dd) with composite-trapezoid integrals
/// over the trajectory samples. Throws UndefinedEfficiency when the
/// denominator vanishes.
EfficiencyReport efficiency(const Trajectory& traj, const CoilPair& coils);

/// Final fractional drain energy.
double transfer_fidelity(const Trajectory& traj);

/// Energy bookkeeping: |tr ρ(0) − tr ρ(T) − c∫(Γs ρ_ss + (Γd+Γw) ρ_dd) dt| where
/// c is the energy decay factor of the trajectory's loss convention.
double doublecheck_integrals(const Trajectory& traj, const CoilPair& coils);

/// Composite trapezoid over (possibly non-uniform) abscissae.
double trapezoid(std::span<const double> t, std::span<const double> y);

/// Composite Simpson; a trailing odd interval is closed with the 3/8 rule.
double simpson_uniform(std::span<const double> y, double step);

} // namespace wpt
