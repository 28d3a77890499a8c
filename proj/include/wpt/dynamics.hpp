#pragma once

#include "wpt/integrator.hpp"
#include "wpt/model.hpp"
#include "wpt/schedules.hpp"
#include "wpt/state.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace wpt {

enum class Protocol { Adiabatic, TQD };

std::string_view to_string(Protocol p);
Protocol protocol_from_string(std::string_view s);

using IntegratorMethod = ode::Method;

std::string_view to_string(IntegratorMethod m);
IntegratorMethod integrator_method_from_string(std::string_view s);

/// How the loss rates Γ of CoilPair enter the master equation.
///
/// Amplitude: Γ are coupled-mode amplitude decay rates (da/dt = … − Γa), so
/// stored energy decays at 2Γ and the master equation applies −½{2Γ, ρ}.
/// Population: Γ act directly on populations, −½{Γ, ρ}.
enum class LossConvention { Amplitude, Population };

std::string_view to_string(LossConvention c);
LossConvention loss_convention_from_string(std::string_view s);

/// Energy decay rate per unit Γ: 2 for Amplitude, 1 for Population.
double energy_decay_factor(LossConvention c);

struct IntegratorConfig {
    IntegratorMethod method = IntegratorMethod::AdaptiveRK45;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step_fraction = 1e-3;  ///< of the window T
    int sample_count = 2000;

    friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;

    void validate() const;
};

struct PhysicsOptions {
    CdOptions cd;
    LossConvention losses = LossConvention::Amplitude;

    friend bool operator==(const PhysicsOptions&, const PhysicsOptions&) = default;
};

struct TrajectorySample {
    double t = 0.0;
    DensityMatrix2 rho;
    double kappa = 0.0;
    double delta = 0.0;
    double kappa_a = 0.0;
    /// CDTerms::frame_phase for TQD runs, 0 otherwise. ρ of a TQD run lives
    /// in the rotated basis; undo_frame_rotation maps it back.
    double frame_phase = 0.0;
    double frac_s = 0.0;
    double frac_d = 0.0;
};

struct TrajectoryMeta {
    std::string protocol;  ///< "adiabatic", "tqd", "lab"
    ScheduleKind schedule_kind = ScheduleKind::LandauZener;
    double kappa0 = 0.0;
    double delta_offset = 0.0;
    double beta = 0.0;
    double t0 = 0.0;
    double window = 0.0;
    CoilPair coils;
    PhysicsOptions physics;
    ode::Stats stats;
};

/// Sampled evolution on [0, T]; sample times strictly increase from 0 to T.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    TrajectoryMeta meta;

    double window() const { return samples.empty() ? 0.0 : samples.back().t; }
    const TrajectorySample& front() const { return samples.front(); }
    const TrajectorySample& back() const { return samples.back(); }
};

/// Uniform sample grid t_i = T·i/(n − 1), with the last point exactly T.
std::vector<double> sample_grid(double window, int count);

/// dρ/dt = −j[H, ρ] − ½{Γ_E, ρ} with H from the protocol and Γ_E the energy
/// decay matrix (see LossConvention). ρ is re-symmetrized after every step,
/// and a negative eigenvalue within tolerance is clipped to zero at fixed trace.
///
/// Throws StiffnessError on step underflow and AccuracyError when ρ loses
/// positivity or its trace grows by more than 1e-6.
Trajectory evolve_master(Protocol protocol, const DriveSchedule& schedule, const CoilPair& coils,
                         const DensityMatrix2& rho0, const IntegratorConfig& cfg,
                         const PhysicsOptions& physics = {});

/// Non-Hermitian amplitude equation db/dt = (−jH − Γ_E/2) b; reports ρ = bb†.
Trajectory evolve_amplitudes_rotating(Protocol protocol, const DriveSchedule& schedule,
                                      const CoilPair& coils, const std::array<cplx, 2>& b0,
                                      const IntegratorConfig& cfg, const PhysicsOptions& physics = {});

/// Lab-frame coupled-mode equations with static κ:
///   da_s/dt = (jωs − Γs)a_s + jκ a_d,  da_d/dt = (jωd − Γd − Γw)a_d + jκ a_s.
/// Reported ρ uses b = a·exp(−j(ωs+ωd)t/2); delta is ωd − ωs.
Trajectory evolve_amplitudes_lab(const CoilPair& coils, double kappa, const std::array<cplx, 2>& a0,
                                 double tspan, const IntegratorConfig& cfg);

} // namespace wpt
