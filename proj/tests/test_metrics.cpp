#include "wpt/error.hpp"
#include "wpt/experiments.hpp"
#include "wpt/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace wpt;
using doctest::Approx;

namespace {

Trajectory constant(double ss, double dd, double window = 1e-4, int n = 101)
{
    Trajectory tr;
    for (double t : sample_grid(window, n)) {
        TrajectorySample s;
        s.t = t;
        s.rho = DensityMatrix2{Mat2::diag(ss, dd)};
        s.frac_s = ss;
        s.frac_d = dd;
        tr.samples.push_back(s);
    }
    return tr;
}

Trajectory scaled(const Trajectory& in, double c)
{
    Trajectory out = in;
    for (auto& s : out.samples)
        s.rho.m = c * s.rho.m;
    return out;
}

Trajectory every_other(const Trajectory& in)
{
    Trajectory out = in;
    out.samples.clear();
    for (std::size_t i = 0; i < in.samples.size(); i += 2)
        out.samples.push_back(in.samples[i]);
    return out;
}

} // namespace

TEST_CASE("efficiency of synthetic constant populations")
{
    const CoilPair coils{4e3, 4e3, 1e4};
    CHECK(efficiency(constant(0.0, 1.0), coils).eta == Approx(1e4 / 1.4e4));
    CHECK(efficiency(constant(0.0, 1.0), coils).eta == Approx(0.714).epsilon(1e-3));
    CHECK(efficiency(constant(1.0, 0.0), coils).eta == 0.0);
    CHECK(efficiency(constant(0.5, 0.5), {4e3, 4e3, 0.0}).eta == 0.0);
    const auto r = efficiency(constant(0.25, 0.75, 2e-4), coils);
    CHECK(r.integral_source == Approx(0.25 * 2e-4));
    CHECK(r.integral_drain == Approx(0.75 * 2e-4));
    CHECK(r.window == Approx(2e-4));
}

TEST_CASE("efficiency is monotone in the extraction rate for fixed populations")
{
    const auto tr = constant(0.4, 0.6);
    double prev = -1.0;
    for (double gw = 0.0; gw <= 1e5; gw += 5e3) {
        const double eta = efficiency(tr, {4e3, 4e3, gw}).eta;
        CHECK(eta >= prev);
        CHECK(eta <= gw / (4e3 + gw) + 1e-9);
        prev = eta;
    }
}

TEST_CASE("efficiency needs a non-zero denominator")
{
    CHECK_THROWS_AS(efficiency(constant(1.0, 0.0), {}), UndefinedEfficiency);
    CHECK_THROWS_AS(efficiency(constant(0.0, 0.0), {4e3, 4e3, 1e4}), UndefinedEfficiency);
}

TEST_CASE("efficiency on simulated runs")
{
    const CoilPair coils{4e3, 4e3, 1e4};
    const auto setup = figure2_setup('a');
    const auto tr = evolve_master(Protocol::Adiabatic, setup.schedule.build(), coils, DensityMatrix2::source_only(), {});
    const double eta = efficiency(tr, coils).eta;
    CHECK(eta >= 0.0);
    CHECK(eta <= coils.gamma_w / (coils.gamma_d + coils.gamma_w) + 1e-9);

    SUBCASE("invariant under rescaling of the initial state")
    {
        const auto half = evolve_master(Protocol::Adiabatic, setup.schedule.build(), coils,
                                        DensityMatrix2{Mat2::diag(0.5, 0.0)}, {});
        CHECK(efficiency(half, coils).eta == Approx(eta).epsilon(1e-9));
        CHECK(efficiency(scaled(tr, 3.0), coils).eta == Approx(eta).epsilon(1e-12));
    }

    SUBCASE("trapezoid is converged on the default grid")
    {
        IntegratorConfig fine;
        fine.sample_count = 2001;
        const auto tf = evolve_master(Protocol::Adiabatic, setup.schedule.build(), coils, DensityMatrix2::source_only(), fine);
        CHECK(std::abs(efficiency(tf, coils).eta - efficiency(every_other(tf), coils).eta) < 1e-4);
    }
}

TEST_CASE("transfer fidelity")
{
    CHECK(transfer_fidelity(constant(0.2, 0.7)) == Approx(0.7));
    const auto s = DriveSchedule::sampled({0.0, 1e-4, 2e-4}, {-1e5, 0.0, 1e5}, {0.0, 0.0, 0.0});
    const auto none = evolve_master(Protocol::Adiabatic, s, {4e3, 4e3, 0.0}, DensityMatrix2::source_only(), {});
    CHECK(transfer_fidelity(none) == 0.0);

    const auto d = figure2_setup('d');
    const auto lossless = evolve_master(Protocol::TQD, d.schedule.build(), {}, DensityMatrix2::source_only(), {});
    const double f = transfer_fidelity(lossless);
    CHECK(f >= 0.99);
    CHECK(f <= 1.0 + 1e-9);
}

TEST_CASE("energy balance audit")
{
    const auto a = figure2_setup('a');
    const auto sch = a.schedule.build();

    const auto lossless = evolve_master(Protocol::Adiabatic, sch, {}, DensityMatrix2::source_only(), {});
    CHECK(doublecheck_integrals(lossless, {}) < 1e-9);

    const auto fig2a = evolve_master(Protocol::Adiabatic, sch, a.coils, DensityMatrix2::source_only(), {});
    CHECK(doublecheck_integrals(fig2a, a.coils) < 1e-5);

    const PhysicsOptions pop{CdOptions{}, LossConvention::Population};
    const auto fig2a_pop = evolve_master(Protocol::Adiabatic, sch, a.coils, DensityMatrix2::source_only(), {}, pop);
    CHECK(doublecheck_integrals(fig2a_pop, a.coils) < 1e-5);

    const auto flat = DriveSchedule::sampled({0.0, 1e-4, 2e-4}, {5e4, 5e4, 5e4}, {0.0, 0.0, 0.0});
    const CoilPair decay{4e3, 2e3, 1e4};
    const auto pure = evolve_master(Protocol::Adiabatic, flat, decay, DensityMatrix2{Mat2::diag(0.6, 0.4)}, {});
    CHECK(doublecheck_integrals(pure, decay) < 1e-7);
    CHECK(pure.back().rho.rho_ss() == Approx(0.6 * std::exp(-2 * 4e3 * 2e-4)).epsilon(1e-9));
}

TEST_CASE("quadrature helpers")
{
    std::vector<double> t, y;
    for (int i = 0; i <= 10; ++i) {
        t.push_back(0.1 * i);
        y.push_back(3.0 * t.back() + 1.0);
    }
    CHECK(trapezoid(t, y) == Approx(2.5));
    std::vector<double> cubic;
    for (int n : {5, 6, 7, 10}) {
        cubic.clear();
        const double h = 1.0 / (n - 1);
        for (int i = 0; i < n; ++i)
            cubic.push_back(std::pow(i * h, 3));
        CHECK(simpson_uniform(cubic, h) == Approx(0.25).epsilon(1e-12));
    }
    CHECK(simpson_uniform(std::vector<double>{1.0, 3.0}, 0.5) == Approx(1.0));
}
