#include "wpt/experiments.hpp"

#include "wpt/error.hpp"
#include "wpt/metrics.hpp"
#include "wpt/serialize.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wpt {

std::string_view to_string(AxisScale s)
{
    return s == AxisScale::Linear ? "linear" : "log";
}

AxisScale axis_scale_from_string(std::string_view s)
{
    if (s == "linear")
        return AxisScale::Linear;
    if (s == "log")
        return AxisScale::Log;
    throw InvalidParameter("unknown axis scale '" + std::string(s) + "' (linear|log)");
}

namespace {

constexpr std::pair<SweepParam, std::string_view> kParamNames[] = {
    {SweepParam::Kappa0, "kappa0"},   {SweepParam::Delta, "delta"},     {SweepParam::Beta, "beta"},
    {SweepParam::T0, "t0"},           {SweepParam::GammaS, "gamma_s"},  {SweepParam::GammaD, "gamma_d"},
    {SweepParam::GammaW, "gamma_w"},  {SweepParam::GammaSD, "gamma_sd"}, {SweepParam::Distance, "d"},
};

} // namespace

std::string_view to_string(SweepParam p)
{
    for (const auto& [param, name] : kParamNames)
        if (param == p)
            return name;
    return "?";
}

std::optional<SweepParam> sweep_param_from_string(std::string_view s)
{
    for (const auto& [param, name] : kParamNames)
        if (name == s)
            return param;
    return std::nullopt;
}

std::vector<double> SweepAxis::values() const
{
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : double(i) / double(count - 1);
        v[static_cast<std::size_t>(i)] =
            scale == AxisScale::Linear ? min + (max - min) * f : min * std::pow(max / min, f);
    }
    if (count > 1)
        v.back() = max;
    return v;
}

void SweepSpec::validate() const
{
    if (axes.empty() || axes.size() > 2)
        throw InvalidParameter("a sweep needs one or two axes");
    std::set<std::string> seen;
    for (const SweepAxis& a : axes) {
        if (!sweep_param_from_string(a.name))
            throw InvalidParameter("unrecognized sweep axis '" + a.name + "'");
        if (!seen.insert(a.name).second)
            throw InvalidParameter("duplicate sweep axis '" + a.name + "'");
        if (a.count < 1)
            throw InvalidParameter("axis '" + a.name + "' needs count >= 1");
        if (a.scale == AxisScale::Log && !(a.min > 0.0 && a.max > 0.0))
            throw InvalidParameter("log axis '" + a.name + "' needs positive bounds");
    }
    if (protocols.empty())
        throw InvalidParameter("a sweep needs at least one protocol");
    integrator.validate();
}

std::size_t SweepResult::masked_count() const
{
    std::size_t n = 0;
    for (auto m : error_mask)
        n += m != 0;
    return n;
}

const ProtocolGrid* SweepResult::grid(Protocol p) const
{
    for (const auto& g : grids)
        if (g.protocol == p)
            return &g;
    return nullptr;
}

std::string fnv1a_hex(std::string_view data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace {

struct PointOutcome {
    std::vector<double> eta, fidelity, audit;
    std::vector<Trajectory> trajectories;
    ode::Stats stats;
    std::string error;
};

void apply(SweepParam p, double v, const DistanceModel& distance, CoilPair& coils, ScheduleParams& sched)
{
    switch (p) {
    case SweepParam::Kappa0: sched.kappa0 = v; break;
    case SweepParam::Delta: sched.delta_offset = v; break;
    case SweepParam::Beta: sched.beta = v; break;
    case SweepParam::T0: sched.t0 = v; break;
    case SweepParam::GammaS: coils.gamma_s = v; break;
    case SweepParam::GammaD: coils.gamma_d = v; break;
    case SweepParam::GammaW: coils.gamma_w = v; break;
    case SweepParam::GammaSD: coils.gamma_s = coils.gamma_d = v; break;
    case SweepParam::Distance: sched.kappa0 = kappa_of_distance(distance, v); break;
    }
}

PointOutcome evaluate_point(const SweepSpec& spec, const std::vector<std::vector<double>>& values, std::size_t i,
                            std::size_t j)
{
    PointOutcome out;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.eta.assign(spec.protocols.size(), nan);
    out.fidelity.assign(spec.protocols.size(), nan);
    out.audit.assign(spec.protocols.size(), nan);
    try {
        CoilPair coils = spec.coils;
        ScheduleParams sched = spec.schedule;
        apply(*sweep_param_from_string(spec.axes[0].name), values[0][i], spec.distance, coils, sched);
        if (spec.axes.size() > 1)
            apply(*sweep_param_from_string(spec.axes[1].name), values[1][j], spec.distance, coils, sched);
        const DriveSchedule schedule = sched.build();
        std::vector<double> eta(spec.protocols.size()), fid(spec.protocols.size()), audit(spec.protocols.size());
        for (std::size_t k = 0; k < spec.protocols.size(); ++k) {
            Trajectory traj = evolve_master(spec.protocols[k], schedule, coils, DensityMatrix2::source_only(),
                                            spec.integrator, spec.physics);
            out.stats += traj.meta.stats;
            eta[k] = spec.outputs.eta ? efficiency(traj, coils).eta : nan;
            fid[k] = spec.outputs.fidelity ? transfer_fidelity(traj) : nan;
            audit[k] = doublecheck_integrals(traj, coils);
            if (spec.outputs.trajectories)
                out.trajectories.push_back(std::move(traj));
        }
        out.eta = std::move(eta);
        out.fidelity = std::move(fid);
        out.audit = std::move(audit);
    } catch (const std::exception& e) {
        out.error = e.what();
        out.trajectories.clear();
    }
    return out;
}

SweepResult prepare(const SweepSpec& spec, std::vector<std::vector<double>>& values)
{
    spec.validate();
    SweepResult r;
    for (const SweepAxis& a : spec.axes) {
        r.axis_names.push_back(a.name);
        values.push_back(a.values());
    }
    r.axis_values = values;
    r.rows = values[0].size();
    r.cols = values.size() > 1 ? values[1].size() : 1;
    for (Protocol p : spec.protocols) {
        ProtocolGrid g;
        g.protocol = p;
        g.eta.resize(r.size());
        g.fidelity.resize(r.size());
        g.audit.resize(r.size());
        r.grids.push_back(std::move(g));
    }
    r.error_mask.assign(r.size(), 0);
    r.errors.assign(r.size(), {});
    r.provenance.config_hash = fnv1a_hex(nlohmann::json(spec).dump());
    return r;
}

void store(SweepResult& r, std::size_t idx, PointOutcome&& o)
{
    for (std::size_t k = 0; k < r.grids.size(); ++k) {
        r.grids[k].eta[idx] = o.eta[k];
        r.grids[k].fidelity[idx] = o.fidelity[k];
        r.grids[k].audit[idx] = o.audit[k];
    }
    r.error_mask[idx] = o.error.empty() ? 0 : 1;
    r.errors[idx] = std::move(o.error);
    r.provenance.stats += o.stats;
}

void collect_trajectories(SweepResult& r, std::vector<PointOutcome>& outcomes, const SweepSpec& spec)
{
    if (!spec.outputs.trajectories)
        return;
    for (auto& o : outcomes)
        for (auto& t : o.trajectories)
            r.trajectories.push_back(std::move(t));
}

} // namespace

SweepResult run_sweep_serial(const SweepSpec& spec)
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::vector<double>> values;
    SweepResult r = prepare(spec, values);
    std::vector<PointOutcome> outcomes(r.size());
    for (std::size_t idx = 0; idx < r.size(); ++idx)
        outcomes[idx] = evaluate_point(spec, values, idx / r.cols, idx % r.cols);
    for (std::size_t idx = 0; idx < r.size(); ++idx)
        store(r, idx, PointOutcome(outcomes[idx]));
    collect_trajectories(r, outcomes, spec);
    r.provenance.threads = 1;
    r.provenance.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

SweepResult run_sweep(const SweepSpec& spec, int threads)
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::vector<double>> values;
    SweepResult r = prepare(spec, values);
    std::vector<PointOutcome> outcomes(r.size());
    const auto n = static_cast<std::ptrdiff_t>(r.size());
    int used = 1;
#ifdef _OPENMP
    used = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(used)
#else
    (void)threads;
#endif
    for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
        const auto k = static_cast<std::size_t>(idx);
        outcomes[k] = evaluate_point(spec, values, k / r.cols, k % r.cols);
    }
    for (std::size_t idx = 0; idx < r.size(); ++idx)
        store(r, idx, PointOutcome(outcomes[idx]));
    collect_trajectories(r, outcomes, spec);
    r.provenance.threads = used;
    r.provenance.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

Figure2Setup figure2_setup(char variant)
{
    Figure2Setup s;
    s.coils.gamma_s = 4e3;
    s.coils.gamma_d = 4e3;
    s.coils.gamma_w = 0.0;
    switch (variant) {
    case 'a':
        s.protocol = Protocol::Adiabatic;
        s.schedule = {4e4, 2e5, 3e9, 1e-4};
        break;
    case 'b':
        s.protocol = Protocol::TQD;
        s.schedule = {4e2, 2e5, 3e9, 1e-4};
        break;
    case 'c':
        s.protocol = Protocol::TQD;
        s.schedule = {4e2, 2e5, 3e10, 1e-5};
        break;
    case 'd':
        s.protocol = Protocol::TQD;
        s.schedule = {4e2, 2e5, 3e11, 1e-6};
        break;
    default:
        throw InvalidParameter(std::string("unknown figure 2 variant '") + variant + "' (a|b|c|d)");
    }
    return s;
}

Trajectory run_figure2(char variant, const IntegratorConfig& cfg, const PhysicsOptions& physics)
{
    const Figure2Setup s = figure2_setup(variant);
    return evolve_master(s.protocol, s.schedule.build(), s.coils, DensityMatrix2::source_only(), cfg, physics);
}

std::string_view to_string(Figure4Window w)
{
    return w == Figure4Window::Long200us ? "200us" : "2us";
}

Figure4Window figure4_window_from_string(std::string_view s)
{
    if (s == "200us")
        return Figure4Window::Long200us;
    if (s == "2us")
        return Figure4Window::Short2us;
    throw InvalidParameter("unknown figure 4 window '" + std::string(s) + "' (200us|2us)");
}

double figure4_t0(Figure4Window w)
{
    return w == Figure4Window::Long200us ? 1e-4 : 1e-6;
}

Figure4Result run_figure4(Figure4Window window, const Figure4Config& fig, const IntegratorConfig& cfg,
                          const PhysicsOptions& physics, int threads)
{
    if (fig.ratios.empty())
        throw InvalidParameter("figure 4 needs at least one kappa0/gamma ratio");
    Figure4Result out;
    out.window = window;
    out.ratios = fig.ratios;
    const double t0 = figure4_t0(window);
    for (double ratio : fig.ratios) {
        if (!(ratio > 0.0))
            throw InvalidParameter("figure 4 ratios must be positive");
        SweepSpec spec;
        spec.axes = {SweepAxis{"delta", fig.delta_min, fig.delta_max, fig.delta_count, AxisScale::Linear}};
        spec.schedule = {fig.kappa0, 0.0, fig.beta_t0 / t0, t0};
        spec.coils.gamma_s = spec.coils.gamma_d = fig.kappa0 / ratio;
        spec.coils.gamma_w = fig.gamma_w;
        spec.integrator = cfg;
        spec.physics = physics;
        out.curves.push_back(run_sweep(spec, threads));
    }
    return out;
}

std::vector<double> Figure5Config::grid() const
{
    return SweepAxis{"d", d_min, d_max, d_count, AxisScale::Linear}.values();
}

std::vector<DistanceRow> run_figure5(const Figure5Config& fig, const IntegratorConfig& cfg,
                                     const PhysicsOptions& physics, int threads)
{
    const std::vector<double> grid = fig.grid();
    return distance_study(fig.model, fig.schedule.build(), fig.coils, grid, cfg, physics, threads);
}

SweepSpec figure6_spec(double t0, const Figure6Config& fig, const IntegratorConfig& cfg, const PhysicsOptions& physics)
{
    if (!(t0 > 0.0))
        throw InvalidParameter("figure 6 needs t0 > 0");
    SweepSpec spec;
    spec.axes = {SweepAxis{"kappa0", fig.kappa_min, fig.kappa_max, fig.kappa_count, AxisScale::Linear},
                 SweepAxis{"gamma_sd", fig.gamma_min, fig.gamma_max, fig.gamma_count, AxisScale::Linear}};
    spec.schedule = {fig.kappa_min, fig.delta, fig.beta_t0 / t0, t0};
    spec.coils.gamma_w = fig.gamma_w;
    spec.integrator = cfg;
    spec.physics = physics;
    return spec;
}

SweepResult run_figure6(double t0, const Figure6Config& fig, const IntegratorConfig& cfg,
                        const PhysicsOptions& physics, int threads)
{
    return run_sweep(figure6_spec(t0, fig, cfg, physics), threads);
}

} // namespace wpt
