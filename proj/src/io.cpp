#include "wpt/io.hpp"

#include "wpt/error.hpp"
#include "wpt/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace wpt::io {

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string axis_unit(const std::string& name)
{
    if (name == "kappa0" || name == "delta")
        return name + "_rad_per_s";
    if (name == "beta")
        return name + "_rad_per_s2";
    if (name == "t0")
        return name + "_s";
    if (name == "d")
        return name + "_m";
    return name + "_per_s";
}

double value_or_nan(const ProtocolGrid* g, const std::vector<double> ProtocolGrid::*field, std::size_t idx)
{
    return g ? (g->*field)[idx] : std::nan("");
}

void write_sweep_rows(std::ostream& os, const SweepResult& r, const std::string& axis2_override, double axis2_value)
{
    const ProtocolGrid* ad = r.grid(Protocol::Adiabatic);
    const ProtocolGrid* tqd = r.grid(Protocol::TQD);
    for (std::size_t i = 0; i < r.rows; ++i) {
        for (std::size_t j = 0; j < r.cols; ++j) {
            const std::size_t idx = i * r.cols + j;
            const double a2 = !axis2_override.empty() ? axis2_value
                              : r.axis_values.size() > 1 ? r.axis_values[1][j]
                                                         : std::nan("");
            os << format_double(r.axis_values[0][i]) << ',' << format_double(a2) << ','
               << format_double(value_or_nan(ad, &ProtocolGrid::eta, idx)) << ','
               << format_double(value_or_nan(tqd, &ProtocolGrid::eta, idx)) << ','
               << format_double(value_or_nan(ad, &ProtocolGrid::fidelity, idx)) << ','
               << format_double(value_or_nan(tqd, &ProtocolGrid::fidelity, idx)) << '\n';
        }
    }
}

} // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    os << "t_s,frac_s,frac_d,re_rho_sd,im_rho_sd,kappa_rad_per_s,delta_rad_per_s,kappa_a_rad_per_s\n";
    for (const auto& s : traj.samples) {
        os << format_double(s.t) << ',' << format_double(s.frac_s) << ',' << format_double(s.frac_d) << ','
           << format_double(s.rho.rho_sd().real()) << ',' << format_double(s.rho.rho_sd().imag()) << ','
           << format_double(s.kappa) << ',' << format_double(s.delta) << ',' << format_double(s.kappa_a) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const SweepResult& r)
{
    const std::string a1 = axis_unit(r.axis_names.at(0));
    const std::string a2 = r.axis_names.size() > 1 ? axis_unit(r.axis_names[1]) : "none";
    os << "axis1:" << a1 << ",axis2:" << a2 << ",eta_adiabatic,eta_tqd,fidelity_adiabatic,fidelity_tqd\n";
    write_sweep_rows(os, r, {}, 0.0);
}

void write_figure4_csv(std::ostream& os, const Figure4Result& result)
{
    os << "axis1:delta_rad_per_s,axis2:kappa0_over_gamma,eta_adiabatic,eta_tqd,fidelity_adiabatic,fidelity_tqd\n";
    for (std::size_t k = 0; k < result.curves.size(); ++k)
        write_sweep_rows(os, result.curves[k], "ratio", result.ratios[k]);
}

void write_distance_csv(std::ostream& os, const std::vector<DistanceRow>& rows)
{
    os << "d_m,kappa_rad_per_s,kappa_a_peak_rad_per_s,kappa_eff_peak_rad_per_s,eta_adiabatic,eta_tqd\n";
    for (const auto& r : rows) {
        os << format_double(r.d) << ',' << format_double(r.kappa) << ',' << format_double(r.kappa_a_peak) << ','
           << format_double(r.kappa_eff_peak) << ',' << format_double(r.eta_adiabatic) << ','
           << format_double(r.eta_tqd) << '\n';
    }
}

nlohmann::json trajectory_summary(const Trajectory& traj)
{
    const auto& last = traj.back();
    return {{"protocol", traj.meta.protocol},
            {"window_s", traj.window()},
            {"samples", traj.samples.size()},
            {"final_frac_s", last.frac_s},
            {"final_frac_d", last.frac_d},
            {"final_trace", last.rho.trace()},
            {"integrator_stats", traj.meta.stats}};
}

nlohmann::json sweep_summary(const SweepResult& r)
{
    nlohmann::json errors = nlohmann::json::array();
    for (std::size_t idx = 0; idx < r.size(); ++idx)
        if (r.error_mask[idx])
            errors.push_back({{"i", idx / r.cols}, {"j", idx % r.cols}, {"message", r.errors[idx]}});
    nlohmann::json mask = nlohmann::json::array();
    for (auto m : r.error_mask)
        mask.push_back(int(m));
    return {{"axes", r.axis_names},
            {"rows", r.rows},
            {"cols", r.cols},
            {"masked_points", r.masked_count()},
            {"error_mask", mask},
            {"errors", errors},
            {"provenance", r.provenance}};
}

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text)
{
    const std::filesystem::path leaf(name);
    if (name.empty() || leaf.has_parent_path() || leaf.is_absolute() || name == "." || name == "..")
        throw InvalidParameter("output name must be a bare file name: '" + name + "'");
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / leaf;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw Error("failed writing " + path.string());
    return path;
}

} // namespace wpt::io
