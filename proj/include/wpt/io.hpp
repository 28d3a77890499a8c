#pragma once

#include "wpt/coupling.hpp"
#include "wpt/experiments.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>

namespace wpt::io {

// CSV layouts. Every file starts with one header row carrying units.
//
// trajectory: t_s, frac_s, frac_d, re_rho_sd, im_rho_sd,
//             kappa_rad_per_s, delta_rad_per_s, kappa_a_rad_per_s
// sweep:      axis1, axis2, eta_adiabatic, eta_tqd, fidelity_adiabatic, fidelity_tqd
//             (axis names and units are in the header; masked points are nan)
// distance:   d_m, kappa_rad_per_s, kappa_a_peak_rad_per_s,
//             kappa_eff_peak_rad_per_s, eta_adiabatic, eta_tqd

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_sweep_csv(std::ostream& os, const SweepResult& result);
/// Concatenates the per-ratio curves; axis2 is κ₀/Γ.
void write_figure4_csv(std::ostream& os, const Figure4Result& result);
void write_distance_csv(std::ostream& os, const std::vector<DistanceRow>& rows);

nlohmann::json trajectory_summary(const Trajectory& traj);
nlohmann::json sweep_summary(const SweepResult& result);

/// Writes `text` to `dir/name`, creating `dir`. `name` must be a bare file
/// name; anything with a directory component is rejected.
std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text);

/// "%.17g"
std::string format_double(double v);

} // namespace wpt::io
