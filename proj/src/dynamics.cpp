#include "wpt/dynamics.hpp"

#include "wpt/error.hpp"

#include <cmath>
#include <string>

namespace wpt {

std::string_view to_string(Protocol p)
{
    return p == Protocol::Adiabatic ? "adiabatic" : "tqd";
}

Protocol protocol_from_string(std::string_view s)
{
    if (s == "adiabatic")
        return Protocol::Adiabatic;
    if (s == "tqd")
        return Protocol::TQD;
    throw InvalidParameter("unknown protocol '" + std::string(s) + "' (adiabatic|tqd)");
}

std::string_view to_string(IntegratorMethod m)
{
    return m == IntegratorMethod::AdaptiveRK45 ? "adaptive-rk45" : "fixed-rk4";
}

IntegratorMethod integrator_method_from_string(std::string_view s)
{
    if (s == "adaptive-rk45")
        return IntegratorMethod::AdaptiveRK45;
    if (s == "fixed-rk4")
        return IntegratorMethod::FixedRK4;
    throw InvalidParameter("unknown integrator '" + std::string(s) + "' (adaptive-rk45|fixed-rk4)");
}

std::string_view to_string(LossConvention c)
{
    return c == LossConvention::Amplitude ? "amplitude" : "population";
}

LossConvention loss_convention_from_string(std::string_view s)
{
    if (s == "amplitude")
        return LossConvention::Amplitude;
    if (s == "population")
        return LossConvention::Population;
    throw InvalidParameter("unknown loss convention '" + std::string(s) + "' (amplitude|population)");
}

double energy_decay_factor(LossConvention c)
{
    return c == LossConvention::Amplitude ? 2.0 : 1.0;
}

void IntegratorConfig::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw InvalidParameter("integrator tolerances must be positive");
    if (!(max_step_fraction > 0.0) || max_step_fraction > 1.0)
        throw InvalidParameter("max_step_fraction must lie in (0, 1]");
    if (sample_count < 2)
        throw InvalidParameter("sample_count must be at least 2");
}

std::vector<double> sample_grid(double window, int count)
{
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        t[static_cast<std::size_t>(i)] = window * double(i) / double(count - 1);
    t.back() = window;
    return t;
}

namespace {

using State8 = ode::State<8>;
using State4 = ode::State<4>;

State8 pack(const Mat2& m)
{
    return {m.a11.real(), m.a11.imag(), m.a12.real(), m.a12.imag(),
            m.a21.real(), m.a21.imag(), m.a22.real(), m.a22.imag()};
}

Mat2 unpack(const State8& y)
{
    return {{y[0], y[1]}, {y[2], y[3]}, {y[4], y[5]}, {y[6], y[7]}};
}

State4 pack(const std::array<cplx, 2>& b)
{
    return {b[0].real(), b[0].imag(), b[1].real(), b[1].imag()};
}

std::array<cplx, 2> unpack(const State4& y)
{
    return {cplx{y[0], y[1]}, cplx{y[2], y[3]}};
}

ode::Settings settings_for(const IntegratorConfig& cfg, double window)
{
    cfg.validate();
    ode::Settings s;
    s.method = cfg.method;
    s.rel_tol = cfg.rel_tol;
    s.abs_tol = cfg.abs_tol;
    s.max_step = cfg.max_step_fraction * window;
    return s;
}

Mat2 hamiltonian(Protocol protocol, const DriveSchedule& schedule, double t, const CdOptions& cd)
{
    return protocol == Protocol::Adiabatic ? rotating_hamiltonian(schedule, t).h
                                           : tqd_hamiltonian(schedule, t, cd).h;
}

void validate_initial(const DensityMatrix2& rho0)
{
    if (!rho0.is_hermitian(1e-12))
        throw InvalidState("initial density matrix is not Hermitian");
    if (rho0.min_eigenvalue() < -1e-9)
        throw InvalidState("initial density matrix is not positive semidefinite");
    if (!(rho0.trace() > 0.0))
        throw InvalidState("initial density matrix has zero trace");
}

TrajectoryMeta make_meta(Protocol protocol, const DriveSchedule& schedule, const CoilPair& coils,
                         const PhysicsOptions& physics)
{
    TrajectoryMeta meta;
    meta.protocol = std::string(to_string(protocol));
    meta.schedule_kind = schedule.kind();
    meta.kappa0 = schedule.kappa0();
    meta.delta_offset = schedule.delta_offset();
    meta.beta = schedule.beta();
    meta.t0 = schedule.t0();
    meta.window = schedule.window();
    meta.coils = coils;
    meta.physics = physics;
    return meta;
}

// Schedule observables recorded next to ρ.
void fill_observables(TrajectorySample& s, Protocol protocol, const DriveSchedule& schedule,
                      const CdOptions& cd)
{
    const ScheduleSample sch = schedule.at(s.t);
    s.kappa = sch.kappa;
    s.delta = sch.delta;
    if (sch.kappa == 0.0 && sch.delta == 0.0) {
        s.kappa_a = 0.0;
        s.frame_phase = 0.0;
        return;
    }
    if (protocol == Protocol::TQD) {
        const CDTerms terms = counterdiabatic_terms(schedule, s.t, cd);
        s.kappa_a = terms.kappa_a;
        s.frame_phase = terms.frame_phase;
    } else {
        s.kappa_a = counterdiabatic_terms(schedule, s.t).kappa_a;
        s.frame_phase = 0.0;
    }
}

double fraction_norm(const DensityMatrix2& rho0)
{
    return rho0.rho_ss() > 0.0 ? rho0.rho_ss() : rho0.trace();
}

void check_state(const DensityMatrix2& rho, double trace0, double t)
{
    const double tr = rho.trace();
    if (!std::isfinite(tr))
        throw AccuracyError("non-finite state at t = " + std::to_string(t), t);
    if (tr > trace0 + 1e-6)
        throw AccuracyError("trace grew to " + std::to_string(tr) + " at t = " + std::to_string(t), t);
    if (rho.min_eigenvalue() < -1e-6)
        throw AccuracyError("density matrix lost positivity at t = " + std::to_string(t), t);
}

} // namespace

Trajectory evolve_master(Protocol protocol, const DriveSchedule& schedule, const CoilPair& coils,
                         const DensityMatrix2& rho0, const IntegratorConfig& cfg,
                         const PhysicsOptions& physics)
{
    coils.validate();
    validate_initial(rho0);
    const double window = schedule.window();
    const ode::Settings settings = settings_for(cfg, window);
    const DissipationMatrix gamma = dissipation_matrix(coils);
    const double factor = energy_decay_factor(physics.losses);
    const double g1 = factor * gamma.g11;
    const double g2 = factor * gamma.g22;
    const cplx minus_j{0.0, -1.0};

    auto rhs = [&](double t, const State8& y) {
        const Mat2 rho = unpack(y);
        const Mat2 h = hamiltonian(protocol, schedule, t, physics.cd);
        Mat2 d = minus_j * (h * rho - rho * h);
        d.a11 -= g1 * rho.a11;
        d.a12 -= 0.5 * (g1 + g2) * rho.a12;
        d.a21 -= 0.5 * (g1 + g2) * rho.a21;
        d.a22 -= g2 * rho.a22;
        return pack(d);
    };

    const double trace0 = rho0.trace();
    auto after_step = [&](double t, State8& y) {
        DensityMatrix2 rho{unpack(y)};
        rho.symmetrize();
        check_state(rho, trace0, t);
        rho.clip_to_positive();
        y = pack(rho.m);
    };

    const std::vector<double> times = sample_grid(window, cfg.sample_count);
    Trajectory traj;
    traj.meta = make_meta(protocol, schedule, coils, physics);
    traj.samples.resize(times.size());
    const double norm = fraction_norm(rho0);
    auto on_sample = [&](std::size_t i, double t, const State8& y) {
        TrajectorySample& s = traj.samples[i];
        s.t = t;
        s.rho = DensityMatrix2{unpack(y)};
        s.rho.symmetrize();
        s.rho.clip_to_positive();
        s.frac_s = s.rho.rho_ss() / norm;
        s.frac_d = s.rho.rho_dd() / norm;
        fill_observables(s, protocol, schedule, physics.cd);
    };

    traj.meta.stats = ode::integrate<8>(rhs, pack(rho0.m), 0.0, window, times, settings, after_step, on_sample);
    return traj;
}

Trajectory evolve_amplitudes_rotating(Protocol protocol, const DriveSchedule& schedule,
                                      const CoilPair& coils, const std::array<cplx, 2>& b0,
                                      const IntegratorConfig& cfg, const PhysicsOptions& physics)
{
    coils.validate();
    const DensityMatrix2 rho0 = DensityMatrix2::pure(b0);
    validate_initial(rho0);
    const double window = schedule.window();
    const ode::Settings settings = settings_for(cfg, window);
    const DissipationMatrix gamma = dissipation_matrix(coils);
    const double factor = energy_decay_factor(physics.losses);
    const double half_g1 = 0.5 * factor * gamma.g11;
    const double half_g2 = 0.5 * factor * gamma.g22;
    const cplx minus_j{0.0, -1.0};

    auto rhs = [&](double t, const State4& y) {
        const std::array<cplx, 2> b = unpack(y);
        const Mat2 h = hamiltonian(protocol, schedule, t, physics.cd);
        std::array<cplx, 2> hb = h * b;
        return pack(std::array<cplx, 2>{minus_j * hb[0] - half_g1 * b[0], minus_j * hb[1] - half_g2 * b[1]});
    };
    const double trace0 = rho0.trace();
    auto after_step = [&](double t, State4& y) { check_state(DensityMatrix2::pure(unpack(y)), trace0, t); };

    const std::vector<double> times = sample_grid(window, cfg.sample_count);
    Trajectory traj;
    traj.meta = make_meta(protocol, schedule, coils, physics);
    traj.samples.resize(times.size());
    const double norm = fraction_norm(rho0);
    auto on_sample = [&](std::size_t i, double t, const State4& y) {
        TrajectorySample& s = traj.samples[i];
        s.t = t;
        s.rho = DensityMatrix2::pure(unpack(y));
        s.frac_s = s.rho.rho_ss() / norm;
        s.frac_d = s.rho.rho_dd() / norm;
        fill_observables(s, protocol, schedule, physics.cd);
    };

    traj.meta.stats = ode::integrate<4>(rhs, pack(b0), 0.0, window, times, settings, after_step, on_sample);
    return traj;
}

Trajectory evolve_amplitudes_lab(const CoilPair& coils, double kappa, const std::array<cplx, 2>& a0,
                                 double tspan, const IntegratorConfig& cfg)
{
    coils.validate();
    if (!(coils.omega_s0 > 0.0) || !(coils.omega_d0 > 0.0))
        throw InvalidParameter("lab-frame oracle needs positive omega_s0 and omega_d0");
    if (!(tspan > 0.0))
        throw InvalidParameter("tspan must be positive");
    const DensityMatrix2 rho0 = DensityMatrix2::pure(a0);
    validate_initial(rho0);
    const ode::Settings settings = settings_for(cfg, tspan);
    const cplx j{0.0, 1.0};
    const cplx ds = j * coils.omega_s0 - coils.gamma_s;
    const cplx dd = j * coils.omega_d0 - (coils.gamma_d + coils.gamma_w);
    const cplx coupling = j * kappa;

    auto rhs = [&](double, const State4& y) {
        const std::array<cplx, 2> a = unpack(y);
        return pack(std::array<cplx, 2>{ds * a[0] + coupling * a[1], dd * a[1] + coupling * a[0]});
    };
    const double trace0 = rho0.trace();
    auto after_step = [&](double t, State4& y) { check_state(DensityMatrix2::pure(unpack(y)), trace0, t); };

    const double mean = 0.5 * (coils.omega_s0 + coils.omega_d0);
    const std::vector<double> times = sample_grid(tspan, cfg.sample_count);
    Trajectory traj;
    traj.meta.protocol = "lab";
    traj.meta.kappa0 = kappa;
    traj.meta.delta_offset = coils.omega_d0 - coils.omega_s0;
    traj.meta.t0 = 0.5 * tspan;
    traj.meta.window = tspan;
    traj.meta.coils = coils;
    traj.meta.physics.losses = LossConvention::Amplitude;
    traj.samples.resize(times.size());
    const double norm = fraction_norm(rho0);
    auto on_sample = [&](std::size_t i, double t, const State4& y) {
        const cplx phase = std::polar(1.0, -mean * t);
        std::array<cplx, 2> b = unpack(y);
        b[0] *= phase;
        b[1] *= phase;
        TrajectorySample& s = traj.samples[i];
        s.t = t;
        s.rho = DensityMatrix2::pure(b);
        s.frac_s = s.rho.rho_ss() / norm;
        s.frac_d = s.rho.rho_dd() / norm;
        s.kappa = kappa;
        s.delta = coils.omega_d0 - coils.omega_s0;
    };

    traj.meta.stats = ode::integrate<4>(rhs, pack(a0), 0.0, tspan, times, settings, after_step, on_sample);
    return traj;
}

} // namespace wpt
