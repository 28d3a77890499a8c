// wptsim: command-line front end for the two-coil power transfer simulator.

#include "wpt/config.hpp"
#include "wpt/error.hpp"
#include "wpt/experiments.hpp"
#include "wpt/io.hpp"
#include "wpt/metrics.hpp"
#include "wpt/selftest.hpp"
#include "wpt/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Options {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    bool fixed_step = false;
    int threads = -1;
    std::string phi_dot_mode;
    std::string loss_convention;
    bool ramp = false;
    std::string kappa0, delta, beta, t0;
};

wpt::RunConfig resolve(const Options& opt)
{
    std::vector<std::string> ov = opt.overrides;
    auto shortcut = [&](const std::string& key, const std::string& v) {
        if (!v.empty())
            ov.push_back(key + "=" + v);
    };
    shortcut("schedule.kappa0", opt.kappa0);
    shortcut("schedule.delta_offset", opt.delta);
    shortcut("schedule.beta", opt.beta);
    shortcut("schedule.t0", opt.t0);
    if (!opt.out_dir.empty())
        ov.push_back("output_dir=\"" + opt.out_dir + "\"");
    if (opt.fixed_step)
        ov.push_back("deterministic=true");
    if (opt.threads >= 0)
        ov.push_back("threads=" + std::to_string(opt.threads));
    if (!opt.phi_dot_mode.empty())
        ov.push_back("phi_dot_mode=\"" + opt.phi_dot_mode + "\"");
    if (!opt.loss_convention.empty())
        ov.push_back("loss_convention=\"" + opt.loss_convention + "\"");
    if (opt.ramp)
        ov.push_back("kappa_a_ramp.enabled=true");
    return wpt::load_config(opt.config_path, ov);
}

json sidecar(const wpt::RunConfig& cfg, const json& summary, const wpt::ode::Stats& stats, double wall, int threads)
{
    const json resolved = wpt::emit_config(cfg);
    wpt::Provenance prov;
    prov.config_hash = wpt::fnv1a_hex(resolved.dump());
    prov.stats = stats;
    prov.wall_seconds = wall;
    prov.threads = threads;
    return json{{"config", resolved}, {"provenance", prov}, {"summary", summary}};
}

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_pair(const wpt::RunConfig& cfg, const std::string& stem, const std::string& csv, const json& side)
{
    wpt::io::write_file(cfg.output_dir, stem + ".csv", csv);
    wpt::io::write_file(cfg.output_dir, stem + ".json", side.dump(2) + "\n");
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json schedule_diagnostics(const wpt::DriveSchedule& schedule, const wpt::PhysicsOptions& physics)
{
    const auto diag = wpt::boundary_diagnostic(schedule, physics.cd);
    if (!schedule.crosses_resonance())
        std::cerr << "warning: detuning does not change sign over the window; no resonance crossing\n";
    return json{{"crosses_resonance", schedule.crosses_resonance()},
                {"kappa_a_over_kappa_eff_start", diag.start_ratio},
                {"kappa_a_over_kappa_eff_end", diag.end_ratio}};
}

int emit_trajectory(const wpt::RunConfig& cfg, const std::string& stem, const wpt::Trajectory& traj,
                    const wpt::CoilPair& coils, const json& extra, double wall)
{
    std::ostringstream csv;
    wpt::io::write_trajectory_csv(csv, traj);
    json summary = wpt::io::trajectory_summary(traj);
    summary["energy_audit_residual"] = wpt::doublecheck_integrals(traj, coils);
    for (auto it = extra.begin(); it != extra.end(); ++it)
        summary[it.key()] = it.value();
    std::string line = stem + ": frac_d(T)=" + num(traj.back().frac_d);
    if (coils.gamma_w > 0.0) {
        const double eta = wpt::efficiency(traj, coils).eta;
        summary["eta"] = eta;
        line += " eta=" + num(eta);
    }
    write_pair(cfg, stem, csv.str(), sidecar(cfg, summary, traj.meta.stats, wall, 1));
    std::cout << line << "\n";
    return 0;
}

int cmd_simulate(const wpt::RunConfig& cfg)
{
    const auto start = Clock::now();
    const wpt::DriveSchedule schedule = cfg.schedule.build();
    const json diag = schedule_diagnostics(schedule, cfg.physics());
    const auto traj = wpt::evolve_master(cfg.simulate_protocol, schedule, cfg.coils,
                                         wpt::DensityMatrix2::source_only(), cfg.effective_integrator(), cfg.physics());
    return emit_trajectory(cfg, "simulate", traj, cfg.coils, json{{"schedule", diag}}, seconds_since(start));
}

int cmd_figure2(const wpt::RunConfig& cfg, char variant)
{
    const auto start = Clock::now();
    const wpt::Figure2Setup setup = wpt::figure2_setup(variant);
    const json diag = schedule_diagnostics(setup.schedule.build(), cfg.physics());
    const auto traj = wpt::run_figure2(variant, cfg.effective_integrator(), cfg.physics());
    return emit_trajectory(cfg, std::string("fig2") + variant, traj, setup.coils,
                           json{{"schedule", diag}, {"variant", std::string(1, variant)}}, seconds_since(start));
}

int cmd_figure4(const wpt::RunConfig& cfg, const std::string& which)
{
    std::vector<wpt::Figure4Window> windows;
    if (which == "all")
        windows = {wpt::Figure4Window::Long200us, wpt::Figure4Window::Short2us};
    else
        windows = {wpt::figure4_window_from_string(which)};
    for (auto w : windows) {
        const auto start = Clock::now();
        const auto result =
            wpt::run_figure4(w, cfg.figures.figure4, cfg.effective_integrator(), cfg.physics(), cfg.threads);
        std::ostringstream csv;
        wpt::io::write_figure4_csv(csv, result);
        json curves = json::array();
        wpt::ode::Stats stats;
        std::size_t masked = 0;
        for (std::size_t k = 0; k < result.curves.size(); ++k) {
            curves.push_back({{"kappa0_over_gamma", result.ratios[k]}, {"sweep", wpt::io::sweep_summary(result.curves[k])}});
            stats += result.curves[k].provenance.stats;
            masked += result.curves[k].masked_count();
        }
        const std::string stem = "fig4_" + std::string(wpt::to_string(w));
        write_pair(cfg, stem, csv.str(),
                   sidecar(cfg, json{{"window", wpt::to_string(w)}, {"curves", curves}}, stats, seconds_since(start),
                           result.curves.front().provenance.threads));
        const auto& last = result.curves.back();
        std::cout << stem << ": ratio=" << num(result.ratios.back())
                  << " eta_adiabatic(delta=0)=" << num(last.grid(wpt::Protocol::Adiabatic)->eta.front())
                  << " eta_tqd(delta=0)=" << num(last.grid(wpt::Protocol::TQD)->eta.front()) << "\n";
        if (masked)
            std::cerr << "warning: " << masked << " masked point(s) in " << stem << "\n";
    }
    return 0;
}

int cmd_figure5(const wpt::RunConfig& cfg)
{
    const auto start = Clock::now();
    const auto rows = wpt::run_figure5(cfg.figures.figure5, cfg.effective_integrator(), cfg.physics(), cfg.threads);
    std::ostringstream csv;
    wpt::io::write_distance_csv(csv, rows);
    double worst_audit = 0.0;
    for (const auto& r : rows)
        worst_audit = std::max({worst_audit, r.audit_adiabatic, r.audit_tqd});
    const json summary{{"points", rows.size()},
                       {"max_energy_audit_residual", worst_audit},
                       {"eta_adiabatic_far", rows.back().eta_adiabatic},
                       {"eta_tqd_far", rows.back().eta_tqd}};
    write_pair(cfg, "fig5", csv.str(), sidecar(cfg, summary, {}, seconds_since(start), cfg.threads));
    std::cout << "fig5: d=" << num(rows.back().d) << " eta_adiabatic=" << num(rows.back().eta_adiabatic)
              << " eta_tqd=" << num(rows.back().eta_tqd) << "\n";
    return 0;
}

double median(std::vector<double> v)
{
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
    if (v.empty())
        return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int emit_sweep(const wpt::RunConfig& cfg, const std::string& stem, const wpt::SweepResult& r, const json& extra)
{
    std::ostringstream csv;
    wpt::io::write_sweep_csv(csv, r);
    json summary = wpt::io::sweep_summary(r);
    for (auto it = extra.begin(); it != extra.end(); ++it)
        summary[it.key()] = it.value();
    std::string line = stem + ":";
    for (const auto& g : r.grids) {
        const double m = median(g.eta);
        summary["median_eta_" + std::string(wpt::to_string(g.protocol))] = m;
        line += " median_eta_" + std::string(wpt::to_string(g.protocol)) + "=" + num(m);
    }
    write_pair(cfg, stem, csv.str(),
               sidecar(cfg, summary, r.provenance.stats, r.provenance.wall_seconds, r.provenance.threads));
    for (std::size_t k = 0; k < r.trajectories.size(); ++k) {
        std::ostringstream tcsv;
        wpt::io::write_trajectory_csv(tcsv, r.trajectories[k]);
        wpt::io::write_file(cfg.output_dir, stem + "_traj_" + std::to_string(k) + "_" + r.trajectories[k].meta.protocol + ".csv",
                            tcsv.str());
    }
    std::cout << line << "\n";
    if (r.masked_count())
        std::cerr << "warning: " << r.masked_count() << " masked point(s) in " << stem << "\n";
    return 0;
}

int cmd_figure6(const wpt::RunConfig& cfg, const std::string& which)
{
    std::vector<double> t0s;
    if (which == "all")
        t0s = {1e-4, 1e-5, 1e-6};
    else
        t0s = {std::stod(which)};
    for (double t0 : t0s) {
        const auto r = wpt::run_figure6(t0, cfg.figures.figure6, cfg.effective_integrator(), cfg.physics(), cfg.threads);
        char stem[64];
        std::snprintf(stem, sizeof stem, "fig6_t0_%.0e", t0);
        emit_sweep(cfg, stem, r, json{{"t0", t0}});
    }
    return 0;
}

int cmd_sweep(const wpt::RunConfig& cfg)
{
    const auto r = wpt::run_sweep(cfg.sweep_spec(), cfg.threads);
    return emit_sweep(cfg, "sweep", r, json::object());
}

int cmd_selftest()
{
    const auto results = wpt::run_selftest();
    int failed = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
        failed += r.passed ? 0 : 1;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " properties passed\n";
    return failed ? 1 : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-coil wireless power transfer simulator (adiabatic and transitionless sweeps)", "wptsim"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--override", opt.overrides, "KEY=VALUE config override (dotted path), repeatable")
        ->take_all()
        ->allow_extra_args(false);
    app.add_flag("--fixed-step", opt.fixed_step, "use the fixed-step RK4 integrator");
    app.add_option("--threads", opt.threads, "worker threads for grids (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    app.add_option("--phi-dot-mode", opt.phi_dot_mode, "detuning correction: exact, verbatim or off")
        ->check(CLI::IsMember({"exact", "verbatim", "off"}));
    app.add_option("--loss-convention", opt.loss_convention, "amplitude or population")
        ->check(CLI::IsMember({"amplitude", "population"}));
    app.add_flag("--ramp", opt.ramp, "enable the sine^2 ramp on kappa_a");
    app.add_option("--kappa0", opt.kappa0, "shortcut for schedule.kappa0");
    app.add_option("--delta", opt.delta, "shortcut for schedule.delta_offset");
    app.add_option("--beta", opt.beta, "shortcut for schedule.beta");
    app.add_option("--t0", opt.t0, "shortcut for schedule.t0");

    auto* simulate = app.add_subcommand("simulate", "evolve the configured schedule and protocol");
    std::string variant;
    auto* fig2 = app.add_subcommand("figure2", "source/drain energy evolution, variant a|b|c|d");
    fig2->add_option("variant", variant, "a, b, c or d")->required()->check(CLI::IsMember({"a", "b", "c", "d"}));
    std::string window = "all";
    auto* fig4 = app.add_subcommand("figure4", "efficiency versus detuning offset");
    fig4->add_option("window", window, "200us, 2us or all")->check(CLI::IsMember({"200us", "2us", "all"}));
    auto* fig5 = app.add_subcommand("figure5", "efficiency versus coil separation");
    std::string fig6_t0 = "all";
    auto* fig6 = app.add_subcommand("figure6", "efficiency over coupling and loss");
    fig6->add_option("t0", fig6_t0, "half-window in seconds (1e-4, 1e-5, 1e-6) or all");
    auto* sweep = app.add_subcommand("sweep", "generic parameter sweep from the config's sweep block");
    auto* selftest = app.add_subcommand("selftest", "run the analytic property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        if (selftest->parsed())
            return cmd_selftest();
        const wpt::RunConfig cfg = resolve(opt);
        if (simulate->parsed())
            return cmd_simulate(cfg);
        if (fig2->parsed())
            return cmd_figure2(cfg, variant.front());
        if (fig4->parsed())
            return cmd_figure4(cfg, window);
        if (fig5->parsed())
            return cmd_figure5(cfg);
        if (fig6->parsed())
            return cmd_figure6(cfg, fig6_t0);
        if (sweep->parsed())
            return cmd_sweep(cfg);
    } catch (const wpt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 2;
}
