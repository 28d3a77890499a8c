#pragma once

#include "wpt/dynamics.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace wpt {

enum class DistanceForm {
    PowerLaw,    ///< κ_ref·(d_ref/d)ⁿ
    Saturating,  ///< κ_ref/(1 + (d/d_ref)ⁿ)
};

std::string_view to_string(DistanceForm f);
DistanceForm distance_form_from_string(std::string_view s);

/// Parametric coupling-versus-separation law.
struct DistanceModel {
    DistanceForm form = DistanceForm::Saturating;
    double kappa_ref = 1e5;  ///< rad/s
    double d_ref = 0.6934;   ///< m
    double exponent = 3.0;

    friend bool operator==(const DistanceModel&, const DistanceModel&) = default;

    void validate() const;
};

double kappa_of_distance(const DistanceModel& model, double d);

/// κ = M·√(ωs·ωd/(Ls·Ld)). M may be zero; everything else must be positive.
double kappa_from_inductance(double mutual, double omega_s, double omega_d, double l_s, double l_d);

struct DistanceRow {
    double d = 0.0;
    double kappa = 0.0;
    double kappa_a_peak = 0.0;
    double kappa_eff_peak = 0.0;
    double eta_adiabatic = 0.0;
    double eta_tqd = 0.0;
    double audit_adiabatic = 0.0;  ///< doublecheck_integrals residual
    double audit_tqd = 0.0;
};

/// For each separation, substitutes κ₀ = κ(d) into the Landau-Zener template
/// and runs both protocols through evolve_master. κ_a is reported at the
/// schedule's closest approach to resonance. Grid points run in parallel
/// (`threads` ≤ 0 uses the OpenMP default).
std::vector<DistanceRow> distance_study(const DistanceModel& model, const DriveSchedule& schedule_template,
                                        const CoilPair& coils, std::span<const double> d_grid,
                                        const IntegratorConfig& cfg, const PhysicsOptions& physics = {},
                                        int threads = 0);

/// Single-threaded reference for distance_study.
std::vector<DistanceRow> distance_study_serial(const DistanceModel& model,
                                               const DriveSchedule& schedule_template,
                                               const CoilPair& coils, std::span<const double> d_grid,
                                               const IntegratorConfig& cfg, const PhysicsOptions& physics = {});

} // namespace wpt
