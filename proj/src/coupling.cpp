#include "wpt/coupling.hpp"

#include "wpt/error.hpp"
#include "wpt/metrics.hpp"

#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wpt {

std::string_view to_string(DistanceForm f)
{
    return f == DistanceForm::PowerLaw ? "power-law" : "saturating";
}

DistanceForm distance_form_from_string(std::string_view s)
{
    if (s == "power-law")
        return DistanceForm::PowerLaw;
    if (s == "saturating")
        return DistanceForm::Saturating;
    throw InvalidParameter("unknown distance form '" + std::string(s) + "' (power-law|saturating)");
}

void DistanceModel::validate() const
{
    if (!(kappa_ref > 0.0) || !(d_ref > 0.0) || !(exponent > 0.0))
        throw InvalidParameter("distance model needs kappa_ref, d_ref and exponent > 0");
}

double kappa_of_distance(const DistanceModel& model, double d)
{
    model.validate();
    if (model.form == DistanceForm::PowerLaw) {
        if (!(d > 0.0))
            throw DomainError("power-law coupling needs d > 0, got " + std::to_string(d));
        return model.kappa_ref * std::pow(model.d_ref / d, model.exponent);
    }
    if (!(d >= 0.0))
        throw DomainError("saturating coupling needs d >= 0, got " + std::to_string(d));
    return model.kappa_ref / (1.0 + std::pow(d / model.d_ref, model.exponent));
}

double kappa_from_inductance(double mutual, double omega_s, double omega_d, double l_s, double l_d)
{
    if (!(mutual >= 0.0) || !(omega_s > 0.0) || !(omega_d > 0.0) || !(l_s > 0.0) || !(l_d > 0.0))
        throw DomainError("kappa_from_inductance needs M >= 0 and positive frequencies and inductances");
    return mutual * std::sqrt(omega_s * omega_d / (l_s * l_d));
}

namespace {

void check_grid(std::span<const double> d_grid)
{
    if (d_grid.empty())
        throw InvalidParameter("distance grid is empty");
    for (std::size_t i = 1; i < d_grid.size(); ++i)
        if (!(d_grid[i] > d_grid[i - 1]))
            throw InvalidParameter("distance grid must be strictly ascending");
}

DistanceRow distance_point(const DistanceModel& model, const DriveSchedule& tmpl, const CoilPair& coils,
                           double d, const IntegratorConfig& cfg, const PhysicsOptions& physics)
{
    DistanceRow row;
    row.d = d;
    row.kappa = kappa_of_distance(model, d);
    const DriveSchedule schedule = tmpl.with_kappa0(row.kappa);
    const CDTerms peak = counterdiabatic_terms(schedule, schedule.closest_approach(), physics.cd);
    row.kappa_a_peak = peak.kappa_a;
    row.kappa_eff_peak = peak.kappa_eff;
    const auto rho0 = DensityMatrix2::source_only();
    const Trajectory ad = evolve_master(Protocol::Adiabatic, schedule, coils, rho0, cfg, physics);
    const Trajectory tqd = evolve_master(Protocol::TQD, schedule, coils, rho0, cfg, physics);
    row.eta_adiabatic = efficiency(ad, coils).eta;
    row.eta_tqd = efficiency(tqd, coils).eta;
    row.audit_adiabatic = doublecheck_integrals(ad, coils);
    row.audit_tqd = doublecheck_integrals(tqd, coils);
    return row;
}

} // namespace

std::vector<DistanceRow> distance_study_serial(const DistanceModel& model, const DriveSchedule& schedule_template,
                                               const CoilPair& coils, std::span<const double> d_grid,
                                               const IntegratorConfig& cfg, const PhysicsOptions& physics)
{
    check_grid(d_grid);
    std::vector<DistanceRow> rows;
    rows.reserve(d_grid.size());
    for (double d : d_grid)
        rows.push_back(distance_point(model, schedule_template, coils, d, cfg, physics));
    return rows;
}

std::vector<DistanceRow> distance_study(const DistanceModel& model, const DriveSchedule& schedule_template,
                                        const CoilPair& coils, std::span<const double> d_grid,
                                        const IntegratorConfig& cfg, const PhysicsOptions& physics, int threads)
{
    check_grid(d_grid);
    const auto n = static_cast<std::ptrdiff_t>(d_grid.size());
    std::vector<DistanceRow> rows(d_grid.size());
    std::vector<std::string> failures(d_grid.size());
#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#else
    (void)threads;
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            rows[k] = distance_point(model, schedule_template, coils, d_grid[k], cfg, physics);
        } catch (const std::exception& e) {
            failures[k] = e.what();
        }
    }
    for (std::size_t k = 0; k < failures.size(); ++k)
        if (!failures[k].empty())
            throw Error("distance study failed at d = " + std::to_string(d_grid[k]) + ": " + failures[k]);
    return rows;
}

} // namespace wpt
