#include "wpt/dynamics.hpp"
#include "wpt/error.hpp"
#include "wpt/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace wpt;
using doctest::Approx;

namespace {

DriveSchedule flat(double delta, double kappa, double window)
{
    return DriveSchedule::sampled({0.0, 0.5 * window, window}, {delta, delta, delta}, {kappa, kappa, kappa});
}

double max_elementwise(const Mat2& a, const Mat2& b) { return max_abs(a - b); }

const IntegratorConfig fast{IntegratorMethod::AdaptiveRK45, 1e-10, 1e-13, 1e-3, 400};

} // namespace

TEST_CASE("uncoupled lossless evolution freezes populations")
{
    const auto s = DriveSchedule::sampled({0.0, 1e-5, 2e-5}, {-2e5, 1e4, 3e5}, {0.0, 0.0, 0.0});
    const DensityMatrix2 rho0{{0.7, cplx(0.2, 0.1), cplx(0.2, -0.1), 0.3}};
    const auto tr = evolve_master(Protocol::Adiabatic, s, CoilPair{}, rho0, fast);
    for (const auto& smp : tr.samples) {
        CHECK(smp.rho.rho_ss() == Approx(0.7).epsilon(1e-12));
        CHECK(smp.rho.rho_dd() == Approx(0.3).epsilon(1e-12));
        CHECK(std::abs(smp.rho.rho_sd()) == Approx(std::abs(rho0.rho_sd())).epsilon(1e-9));
    }
}

TEST_CASE("anticommutator-only decay")
{
    const double g = 4e3;
    const auto s = flat(0.0, 0.0, 1e-4);
    const CoilPair coils{g, g, g};
    const auto pop = evolve_master(Protocol::Adiabatic, s, coils, DensityMatrix2::source_only(), fast,
                                   {CdOptions{}, LossConvention::Population});
    CHECK(pop.back().rho.trace() == Approx(std::exp(-0.4)).epsilon(1e-9));
    CHECK(pop.back().rho.trace() == Approx(0.670).epsilon(1e-3));
    const auto amp = evolve_master(Protocol::Adiabatic, s, coils, DensityMatrix2::source_only(), fast);
    CHECK(amp.back().rho.trace() == Approx(std::exp(-0.8)).epsilon(1e-9));

    // both diagonal channels decay at their own rate
    const DensityMatrix2 half{Mat2::diag(0.5, 0.5)};
    const auto both = evolve_master(Protocol::Adiabatic, s, coils, half, fast, {CdOptions{}, LossConvention::Population});
    CHECK(both.back().rho.rho_ss() == Approx(0.5 * std::exp(-0.4)).epsilon(1e-9));
    CHECK(both.back().rho.rho_dd() == Approx(0.5 * std::exp(-0.8)).epsilon(1e-9));
}

TEST_CASE("rabi oscillation between resonant coils")
{
    const double k = 4e4;
    const auto s = flat(0.0, k, 1e-4);
    const auto tr = evolve_amplitudes_rotating(Protocol::Adiabatic, s, CoilPair{}, {cplx(1.0), cplx(0.0)}, fast);
    for (const auto& smp : tr.samples)
        CHECK(smp.rho.rho_dd() == Approx(std::pow(std::sin(k * smp.t), 2)).epsilon(1e-8).scale(1.0));
}

TEST_CASE("pure drain decay")
{
    const CoilPair coils{0.0, 2e3, 5e4};
    const auto s = flat(1e4, 0.0, 5e-5);
    const auto pop = evolve_amplitudes_rotating(Protocol::Adiabatic, s, coils, {cplx(0.0), cplx(1.0)}, fast,
                                                {CdOptions{}, LossConvention::Population});
    for (const auto& smp : pop.samples)
        CHECK(smp.rho.rho_dd() == Approx(std::exp(-(2e3 + 5e4) * smp.t)).epsilon(1e-9));
    const auto amp = evolve_amplitudes_rotating(Protocol::Adiabatic, s, coils, {cplx(0.0), cplx(1.0)}, fast);
    CHECK(amp.back().rho.rho_dd() == Approx(std::exp(-2 * (2e3 + 5e4) * 5e-5)).epsilon(1e-9));
    // the reference population is the trace when the source starts empty
    CHECK(amp.back().frac_d == Approx(amp.back().rho.rho_dd()));
}

TEST_CASE("master equation matches the amplitude oracle")
{
    for (char v : {'a', 'b', 'c', 'd'}) {
        const auto setup = figure2_setup(v);
        const auto sch = setup.schedule.build();
        for (auto conv : {LossConvention::Amplitude, LossConvention::Population}) {
            const PhysicsOptions phys{CdOptions{}, conv};
            const auto m = evolve_master(setup.protocol, sch, setup.coils, DensityMatrix2::source_only(), {}, phys);
            const auto o = evolve_amplitudes_rotating(setup.protocol, sch, setup.coils, {cplx(1.0), cplx(0.0)}, {}, phys);
            REQUIRE(m.samples.size() == o.samples.size());
            double worst = 0.0;
            for (std::size_t i = 0; i < m.samples.size(); ++i)
                worst = std::max(worst, max_elementwise(m.samples[i].rho.m, o.samples[i].rho.m));
            CHECK(worst < 1e-6);
        }
    }
}

TEST_CASE("lab frame oracle")
{
    SUBCASE("resonant beats have period pi/kappa")
    {
        const double k = 2e4;
        const CoilPair coils{0.0, 0.0, 0.0, 1e6, 1e6};
        const double period = M_PI / k;
        const auto tr = evolve_amplitudes_lab(coils, k, {cplx(1.0), cplx(0.0)}, 2 * period, fast);
        for (const auto& smp : tr.samples)
            CHECK(smp.rho.rho_dd() == Approx(std::pow(std::sin(k * smp.t), 2)).epsilon(1e-7).scale(1.0));
        CHECK(tr.back().rho.rho_ss() == Approx(1.0).epsilon(1e-7));
    }

    SUBCASE("detuned coils match the rotating frame")
    {
        const CoilPair coils{0.0, 0.0, 0.0, 1e6, 1.2e6};
        const double t_end = 1e-4;
        const auto lab = evolve_amplitudes_lab(coils, 4e4, {cplx(1.0), cplx(0.0)}, t_end, fast);
        const auto rot = evolve_amplitudes_rotating(Protocol::Adiabatic, flat(2e5, 4e4, t_end), coils,
                                                    {cplx(1.0), cplx(0.0)}, fast);
        for (std::size_t i = 0; i < lab.samples.size(); ++i) {
            CHECK(std::abs(lab.samples[i].rho.rho_ss() - rot.samples[i].rho.rho_ss()) < 1e-6);
            CHECK(std::abs(lab.samples[i].rho.rho_dd() - rot.samples[i].rho.rho_dd()) < 1e-6);
        }
        CHECK(lab.samples[5].delta == Approx(2e5));
    }

    SUBCASE("isolated lossy source")
    {
        const CoilPair coils{3e3, 1e3, 0.0, 1e6, 1.1e6};
        const auto tr = evolve_amplitudes_lab(coils, 0.0, {cplx(1.0), cplx(0.0)}, 2e-4, fast);
        for (const auto& smp : tr.samples)
            CHECK(std::abs(smp.rho.rho_ss() - std::exp(-2 * 3e3 * smp.t)) < 1e-7);
    }

    SUBCASE("lossy lab run matches the amplitude convention")
    {
        const CoilPair coils{4e3, 2e3, 1e4, 1e6, 1.2e6};
        const double t_end = 1e-4;
        const auto lab = evolve_amplitudes_lab(coils, 4e4, {cplx(1.0), cplx(0.0)}, t_end, fast);
        const auto rot = evolve_master(Protocol::Adiabatic, flat(2e5, 4e4, t_end), coils,
                                       DensityMatrix2::source_only(), fast);
        for (std::size_t i = 0; i < lab.samples.size(); ++i)
            CHECK(max_elementwise(lab.samples[i].rho.m, rot.samples[i].rho.m) < 1e-6);
    }
}

TEST_CASE("lossless evolution conserves trace for every figure 2 schedule")
{
    for (char v : {'a', 'b', 'c', 'd'}) {
        const auto sch = figure2_setup(v).schedule.build();
        for (auto p : {Protocol::Adiabatic, Protocol::TQD}) {
            const auto tr = evolve_master(p, sch, CoilPair{}, DensityMatrix2::source_only(), {});
            for (const auto& smp : tr.samples)
                CHECK(std::abs(smp.rho.trace() - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("dissipation makes the trace non-increasing and keeps rho positive")
{
    for (char v : {'a', 'b', 'c', 'd'}) {
        const auto setup = figure2_setup(v);
        CoilPair coils = setup.coils;
        coils.gamma_w = 1e4;
        for (auto p : {Protocol::Adiabatic, Protocol::TQD}) {
            const auto tr = evolve_master(p, setup.schedule.build(), coils, DensityMatrix2::source_only(), {});
            double prev = tr.front().rho.trace();
            for (const auto& smp : tr.samples) {
                CHECK(smp.rho.trace() <= prev + 1e-9);
                CHECK(smp.rho.min_eigenvalue() >= -1e-9);
                CHECK(smp.rho.is_hermitian(0.0));
                prev = smp.rho.trace();
            }
        }
    }
}

TEST_CASE("trajectory layout")
{
    const auto sch = DriveSchedule::landau_zener(4e4, 2e5, 3e9, 1e-4);
    const auto tr = evolve_master(Protocol::TQD, sch, {4e3, 4e3, 0.0}, DensityMatrix2::source_only(), {});
    CHECK(tr.samples.size() == 2000);
    CHECK(tr.front().t == 0.0);
    CHECK(tr.back().t == 2e-4);
    for (std::size_t i = 1; i < tr.samples.size(); ++i)
        CHECK(tr.samples[i].t > tr.samples[i - 1].t);
    CHECK(tr.meta.protocol == "tqd");
    CHECK(tr.meta.kappa0 == 4e4);
    CHECK(tr.meta.stats.accepted > 0);
    CHECK(tr.front().frac_s == 1.0);
    const auto& mid = tr.samples[1000];
    CHECK(mid.kappa == 4e4);
    CHECK(mid.delta == Approx(sch.delta(mid.t)));
    CHECK(mid.kappa_a == Approx(counterdiabatic_terms(sch, mid.t).kappa_a));
    CHECK(mid.frame_phase == Approx(counterdiabatic_terms(sch, mid.t).frame_phase));
    CHECK(mid.frac_s == Approx(mid.rho.rho_ss()));
}

TEST_CASE("initial state and configuration validation")
{
    const auto sch = DriveSchedule::landau_zener(4e4, 2e5, 3e9, 1e-4);
    const DensityMatrix2 nonherm{{0.5, cplx(0.1, 0.0), cplx(0.3, 0.0), 0.5}};
    CHECK_THROWS_AS(evolve_master(Protocol::Adiabatic, sch, {}, nonherm, {}), InvalidState);
    const DensityMatrix2 negative{Mat2::diag(1.2, -0.2)};
    CHECK_THROWS_AS(evolve_master(Protocol::Adiabatic, sch, {}, negative, {}), InvalidState);
    CHECK_THROWS_AS(evolve_master(Protocol::Adiabatic, sch, {}, DensityMatrix2{}, {}), InvalidState);

    IntegratorConfig bad;
    bad.sample_count = 1;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = {};
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = {};
    bad.max_step_fraction = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    CHECK_THROWS_AS(evolve_master(Protocol::Adiabatic, sch, {-1.0}, DensityMatrix2::source_only(), {}),
                    InvalidParameter);
}

TEST_CASE("step underflow is a stiffness error naming the time")
{
    // a loss rate this large is far outside what the tolerances can resolve
    IntegratorConfig tight{IntegratorMethod::AdaptiveRK45, 1e-14, 1e-300, 1.0, 10};
    const auto sch = DriveSchedule::landau_zener(4e4, 2e5, 3e9, 1e-4);
    try {
        evolve_master(Protocol::Adiabatic, sch, {1e19, 1e19, 0.0}, DensityMatrix2::source_only(), tight);
        FAIL("expected a stiffness error");
    } catch (const StiffnessError& e) {
        CHECK(e.time() >= 0.0);
        CHECK(std::string(e.what()).find("t = ") != std::string::npos);
    }
}

TEST_CASE("fixed-step integrator agrees with the adaptive one")
{
    const auto setup = figure2_setup('a');
    const auto sch = setup.schedule.build();
    IntegratorConfig rk4;
    rk4.method = IntegratorMethod::FixedRK4;
    const auto a = evolve_master(setup.protocol, sch, setup.coils, DensityMatrix2::source_only(), {});
    const auto b = evolve_master(setup.protocol, sch, setup.coils, DensityMatrix2::source_only(), rk4);
    CHECK(b.back().frac_d == Approx(a.back().frac_d).epsilon(1e-7));
    const auto c = evolve_master(setup.protocol, sch, setup.coils, DensityMatrix2::source_only(), rk4);
    CHECK(b.back().rho == c.back().rho);
}

TEST_CASE("enum names")
{
    CHECK(to_string(Protocol::TQD) == "tqd");
    CHECK(protocol_from_string("adiabatic") == Protocol::Adiabatic);
    CHECK(integrator_method_from_string("fixed-rk4") == IntegratorMethod::FixedRK4);
    CHECK(loss_convention_from_string("population") == LossConvention::Population);
    CHECK(energy_decay_factor(LossConvention::Amplitude) == 2.0);
    CHECK(energy_decay_factor(LossConvention::Population) == 1.0);
    CHECK_THROWS_AS(protocol_from_string("magic"), InvalidParameter);
}
