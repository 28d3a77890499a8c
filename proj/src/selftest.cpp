#include "wpt/selftest.hpp"

#include "wpt/dynamics.hpp"
#include "wpt/experiments.hpp"
#include "wpt/metrics.hpp"
#include "wpt/model.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace wpt {

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

CheckResult check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body)
{
    try {
        auto [ok, detail] = body();
        return {name, ok, detail};
    } catch (const std::exception& e) {
        return {name, false, std::string("threw: ") + e.what()};
    }
}

// Lossless Landau-Zener sweep from −40κ₀ to +40κ₀.
DriveSchedule wide_sweep(double kappa0, double ratio)
{
    const double beta = ratio * 8.0 * kappa0 * kappa0;
    return DriveSchedule::landau_zener(kappa0, 0.0, beta, 40.0 * kappa0 / beta);
}

} // namespace

std::vector<CheckResult> run_selftest()
{
    std::vector<CheckResult> out;
    const IntegratorConfig cfg;

    out.push_back(check("hamiltonian eigenvalues are ±½√(Δ²+4κ²)", [] {
        const auto s = DriveSchedule::landau_zener(4e4, 2e5, 3e9, 1e-4);
        double worst = 0.0;
        for (double t : {0.0, 3e-5, 1e-4, 2e-4}) {
            const auto ev = hermitian_eigenvalues(rotating_hamiltonian(s, t).h);
            const double d = s.delta(t);
            const double expect = 0.5 * std::sqrt(d * d + 4.0 * 4e4 * 4e4);
            worst = std::max(worst, std::abs(ev[1] - expect) / expect);
        }
        return std::pair{worst < 1e-12, "max rel err " + fmt(worst)};
    }));

    out.push_back(check("kappa_a equals |dTheta/dt|/2", [] {
        const auto s = DriveSchedule::landau_zener(4e4, 2e5, 3e9, 1e-4);
        const double h = 1e-9 * s.window();
        double worst = 0.0;
        for (double t : {1e-5, 3.3e-5, 7e-5, 1.5e-4}) {
            const double fd = (mixing_angle(s.kappa(t + h), s.delta(t + h)) -
                               mixing_angle(s.kappa(t - h), s.delta(t - h))) / (2.0 * h);
            const double ka = counterdiabatic_terms(s, t).kappa_a;
            worst = std::max(worst, std::abs(ka - 0.5 * std::abs(fd)) / ka);
        }
        return std::pair{worst < 1e-4, "max rel err " + fmt(worst)};
    }));

    out.push_back(check("lossless evolution conserves trace", [&] {
        CoilPair lossless;
        double worst = 0.0;
        for (char v : {'a', 'd'}) {
            const Figure2Setup s = figure2_setup(v);
            for (Protocol p : {Protocol::Adiabatic, Protocol::TQD}) {
                const auto tr = evolve_master(p, s.schedule.build(), lossless, DensityMatrix2::source_only(), cfg);
                worst = std::max(worst, std::abs(tr.back().rho.trace() - 1.0));
            }
        }
        return std::pair{worst < 1e-6, "max |tr-1| " + fmt(worst)};
    }));

    out.push_back(check("Landau-Zener survival matches exp(-2 pi k^2/beta)", [&] {
        const auto s = wide_sweep(1e4, 0.5);
        const auto tr = evolve_master(Protocol::Adiabatic, s, CoilPair{}, DensityMatrix2::source_only(), cfg);
        const double p = lz_probability(1e4, s.beta());
        const double got = tr.back().rho.rho_ss();
        return std::pair{std::abs(got - p) <= std::max(0.02, 0.1 * p), "got " + fmt(got) + " want " + fmt(p)};
    }));

    out.push_back(check("transitionless drive stays on its branch", [&] {
        const auto s = wide_sweep(1e4, 20.0);
        const auto tr = evolve_master(Protocol::TQD, s, CoilPair{}, DensityMatrix2::source_only(), cfg);
        double worst = 1.0;
        for (const auto& smp : tr.samples) {
            const auto rho = undo_frame_rotation(smp.rho, smp.frame_phase);
            worst = std::min(worst, adiabatic_populations(rho, smp.kappa, smp.delta).second);
        }
        return std::pair{worst >= 1.0 - 5e-3, "min branch population " + fmt(worst)};
    }));

    out.push_back(check("master equation matches amplitude oracle", [&] {
        const Figure2Setup s = figure2_setup('a');
        const auto sched = s.schedule.build();
        const auto m = evolve_master(s.protocol, sched, s.coils, DensityMatrix2::source_only(), cfg);
        const auto a = evolve_amplitudes_rotating(s.protocol, sched, s.coils, {1.0, 0.0}, cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < m.samples.size(); ++i)
            worst = std::max(worst, max_abs(m.samples[i].rho.m - a.samples[i].rho.m));
        return std::pair{worst < 1e-6, "max elementwise diff " + fmt(worst)};
    }));

    out.push_back(check("energy balance closes", [&] {
        const Figure2Setup s = figure2_setup('a');
        const auto tr = run_figure2('a', cfg);
        const double r = doublecheck_integrals(tr, s.coils);
        return std::pair{r < 1e-5, "residual " + fmt(r)};
    }));

    out.push_back(check("efficiency respects the extraction ceiling", [&] {
        CoilPair coils{4e3, 4e3, 1e4};
        const auto tr = evolve_master(Protocol::TQD, DriveSchedule::landau_zener(4e4, 2e5, 3e11, 1e-6), coils,
                                      DensityMatrix2::source_only(), cfg);
        const double eta = efficiency(tr, coils).eta;
        const double ceiling = coils.gamma_w / (coils.gamma_d + coils.gamma_w);
        return std::pair{eta >= 0.0 && eta <= ceiling + 1e-9, "eta " + fmt(eta) + " ceiling " + fmt(ceiling)};
    }));

    return out;
}

} // namespace wpt
