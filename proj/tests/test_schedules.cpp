#include "wpt/error.hpp"
#include "wpt/schedules.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace wpt;
using doctest::Approx;

TEST_CASE("landau-zener schedule evaluates the linear sweep")
{
    const auto s = DriveSchedule::landau_zener(4e4, 2e5, 3e9, 1e-4);
    CHECK(s.window() == Approx(2e-4));
    CHECK(s.delta(1e-4) == Approx(2e5));
    CHECK(s.delta(0.0) == Approx(-1e5));
    CHECK(s.delta(2e-4) == Approx(5e5));
    CHECK(s.kappa(0.7e-4) == 4e4);
    const auto smp = s.at(0.3e-4);
    CHECK(smp.delta_dot == 3e9);
    CHECK(smp.kappa_dot == 0.0);
    CHECK(s.crosses_resonance());
    CHECK(s.closest_approach() == Approx(1e-4 - 2e5 / 3e9));
}

TEST_CASE("constant sweep has zero detuning")
{
    const auto s = DriveSchedule::landau_zener(1e4, 0.0, 0.0, 1e-5);
    for (double t : {0.0, 3e-6, 1e-5, 2e-5})
        CHECK(s.delta(t) == 0.0);
}

TEST_CASE("landau-zener rejects non-positive kappa0 and t0")
{
    CHECK_THROWS_AS(DriveSchedule::landau_zener(0.0, 0, 1e9, 1e-4), InvalidParameter);
    CHECK_THROWS_AS(DriveSchedule::landau_zener(-1.0, 0, 1e9, 1e-4), InvalidParameter);
    CHECK_THROWS_AS(DriveSchedule::landau_zener(1e4, 0, 1e9, 0.0), InvalidParameter);
    CHECK_THROWS_AS(DriveSchedule::landau_zener(1e4, 0, 1e9, -1e-4), InvalidParameter);
}

TEST_CASE("evaluation outside the window is a domain error")
{
    const auto s = DriveSchedule::landau_zener(1e4, 0, 1e9, 1e-4);
    CHECK_THROWS_AS(s.at(-1e-5), DomainError);
    CHECK_THROWS_AS(s.at(3e-4), DomainError);
}

TEST_CASE("sampled schedule reproduces a linear table exactly")
{
    const auto s = DriveSchedule::sampled({0.0, 1e-5, 2e-5, 3e-5}, {-3e5, -1e5, 1e5, 3e5}, {2e4, 2e4, 2e4, 2e4});
    CHECK(s.kind() == ScheduleKind::Sampled);
    CHECK(s.window() == Approx(3e-5));
    CHECK(s.delta(1.5e-5) == Approx(0.0).epsilon(1e-9).scale(1e5));
    CHECK(s.at(0.7e-5).delta_dot == Approx(2e10));
    CHECK(s.kappa(2.2e-5) == Approx(2e4));
    CHECK(s.crosses_resonance());
    CHECK_THROWS_AS(DriveSchedule::sampled({0.0, 1.0}, {0, 1}, {1, 1}), InvalidParameter);
    CHECK_THROWS_AS(DriveSchedule::sampled({0.0, 2.0, 1.0}, {0, 1, 2}, {1, 1, 1}), InvalidParameter);
    CHECK_THROWS_AS(DriveSchedule::sampled({0.0, 1.0, 2.0}, {0, 1, 2}, {1, -1, 1}), InvalidParameter);
}

TEST_CASE("mixing angle conventions")
{
    CHECK(mixing_angle(4e4, 0.0) == Approx(std::numbers::pi / 2));
    CHECK(mixing_angle(1e-300, 1.0) == Approx(0.0));
    CHECK(mixing_angle(1e4, 2e4) == Approx(std::numbers::pi / 4));
    CHECK_THROWS_AS(mixing_angle(0.0, 0.0), UndefinedAngle);
}

TEST_CASE("mixing angle of opposite detunings sums to pi")
{
    for (double k : {1.0, 3e3, 4e4})
        for (double d : {-7e5, -2e4, 1.0, 5e4, 1e6})
            CHECK(mixing_angle(k, d) + mixing_angle(k, -d) == Approx(std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("counterdiabatic coupling on the landau-zener family")
{
    const double k0 = 4e4, beta = 3e9;
    const auto s = DriveSchedule::landau_zener(k0, 2e5, beta, 1e-4);
    for (double t : {0.0, 0.4e-4, 1.3e-4, 2e-4}) {
        const double d = s.delta(t);
        const auto cd = counterdiabatic_terms(s, t);
        CHECK(cd.kappa_a == Approx(beta * k0 / (d * d + 4 * k0 * k0)).epsilon(1e-12));
        CHECK(cd.kappa_eff == Approx(std::hypot(k0, cd.kappa_a)));
        CHECK(cd.kappa_eff >= std::max(k0, cd.kappa_a));
        CHECK(cd.delta_eff == Approx(d - cd.phi_dot));
    }
    const double tc = s.closest_approach();
    const auto at_res = counterdiabatic_terms(s, tc);
    CHECK(at_res.kappa_a == Approx(beta / (4 * k0)));
    for (auto mode : {PhiDotMode::Exact, PhiDotMode::Verbatim, PhiDotMode::Off})
        CHECK(counterdiabatic_terms(s, tc, {mode, 0.0}).phi_dot == Approx(0.0).scale(1.0));
}

TEST_CASE("phi-dot modes")
{
    const double k0 = 4e2, beta = 3e11;
    const auto s = DriveSchedule::landau_zener(k0, 2e5, beta, 1e-6);
    const double t = 0.3e-6;
    const double d = s.delta(t);
    const double r = d * d + 4 * k0 * k0;
    CHECK(counterdiabatic_terms(s, t, {PhiDotMode::Off, 0}).phi_dot == 0.0);
    CHECK(counterdiabatic_terms(s, t, {PhiDotMode::Verbatim, 0}).phi_dot ==
          Approx(2 * d * beta * beta / (r + beta * beta)));
    CHECK(counterdiabatic_terms(s, t, {PhiDotMode::Exact, 0}).phi_dot ==
          Approx(2 * d * beta * beta / (r * r + beta * beta)));
    CHECK(phi_dot_mode_from_string("verbatim") == PhiDotMode::Verbatim);
    CHECK(to_string(PhiDotMode::Exact) == "exact");
    CHECK_THROWS(phi_dot_mode_from_string("sometimes"));
}

TEST_CASE("exact phi-dot is the derivative of the frame phase")
{
    const auto s = DriveSchedule::landau_zener(1e4, 3e4, 2e9, 5e-5);
    const double h = 1e-9 * s.window();
    for (double t : {1e-5, 3.5e-5, 6e-5, 9e-5}) {
        const double fd = (counterdiabatic_terms(s, t + h).frame_phase - counterdiabatic_terms(s, t - h).frame_phase) / (2 * h);
        CHECK(counterdiabatic_terms(s, t).phi_dot == Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("kappa_a equals half the finite-difference angle rate")
{
    const auto lz = DriveSchedule::landau_zener(2e4, -5e4, 4e9, 5e-5);
    const auto sampled = DriveSchedule::sampled({0.0, 1e-5, 2e-5, 3e-5, 4e-5}, {-2e5, -5e4, 2e4, 1e5, 3e5},
                                                {1e4, 2e4, 3e4, 2e4, 1.5e4});
    for (const auto* s : {&lz, &sampled}) {
        const double h = 1e-9 * s->window();
        for (int i = 1; i < 20; ++i) {
            const double t = s->window() * i / 20.0;
            const double fd = (mixing_angle(s->kappa(t + h), s->delta(t + h)) -
                               mixing_angle(s->kappa(t - h), s->delta(t - h))) / (2 * h);
            CHECK(counterdiabatic_terms(*s, t).kappa_a == Approx(std::abs(fd) / 2).epsilon(1e-4));
        }
    }
}

TEST_CASE("kappa_a is even under time reversal of the sweep")
{
    const double t0 = 1e-4;
    const auto fwd = DriveSchedule::landau_zener(3e4, 0.0, 3e9, t0);
    const auto rev = DriveSchedule::landau_zener(3e4, 0.0, -3e9, t0);
    for (int i = 0; i <= 10; ++i) {
        const double t = 2 * t0 * i / 10.0;
        CHECK(counterdiabatic_terms(fwd, t).kappa_a == Approx(counterdiabatic_terms(rev, 2 * t0 - t).kappa_a));
    }
}

TEST_CASE("singular schedule point")
{
    const auto s = DriveSchedule::sampled({0.0, 1.0, 2.0}, {-1.0, 0.0, 1.0}, {0.0, 0.0, 0.0});
    CHECK_THROWS_AS(counterdiabatic_terms(s, 1.0), SingularSchedule);
}

TEST_CASE("adiabaticity margin")
{
    CHECK(adiabaticity_margin(DriveSchedule::landau_zener(4e4, 1e5, 0.0, 1e-4), 5e-5) == 0.0);
    const auto a = DriveSchedule::landau_zener(4e4, 0.0, 3e9, 1e-4);
    CHECK(adiabaticity_margin(a, 1e-4) == Approx(3e9 / (8 * 1.6e9)));
    CHECK(adiabaticity_margin(a, 1e-4) == Approx(0.234).epsilon(1e-3));
    const auto d = DriveSchedule::landau_zener(4e2, 0.0, 3e11, 1e-6);
    CHECK(adiabaticity_margin(d, 1e-6) == Approx(3e11 / (8 * 1.6e5)));
    CHECK(adiabaticity_margin(d, 1e-6) > 2e5);
}

TEST_CASE("landau-zener probability")
{
    CHECK(lz_probability(4e4, 3e9) == Approx(std::exp(-2 * std::numbers::pi * 1.6e9 / 3e9)));
    CHECK(lz_probability(4e4, 3e9) == Approx(0.0350).epsilon(2e-3));
    CHECK(lz_probability(1e-9, 3e9) == Approx(1.0));
    CHECK(lz_probability(4e2, 3e11) == Approx(0.999997).epsilon(1e-6));
    CHECK(lz_probability(4e4, -3e9) == lz_probability(4e4, 3e9));
    CHECK_THROWS_AS(lz_probability(4e4, 0.0), InvalidParameter);
}

TEST_CASE("landau-zener probability monotonicity")
{
    double prev = 1.0;
    for (double k = 1e3; k <= 1e5; k *= 1.5) {
        const double p = lz_probability(k, 3e9);
        CHECK(p <= prev);
        prev = p;
    }
    prev = 0.0;
    for (double b = 1e8; b <= 1e12; b *= 2) {
        const double p = lz_probability(2e4, b);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("ramp switches kappa_a off at the window edges")
{
    const auto s = DriveSchedule::landau_zener(4e4, 2e5, 3e9, 1e-4);
    const CdOptions ramp{PhiDotMode::Exact, 0.05};
    CHECK(counterdiabatic_terms(s, 0.0, ramp).kappa_a == Approx(0.0).scale(1.0));
    CHECK(counterdiabatic_terms(s, s.window(), ramp).kappa_a == Approx(0.0).scale(1.0));
    CHECK(counterdiabatic_terms(s, 1e-4, ramp).kappa_a == Approx(counterdiabatic_terms(s, 1e-4).kappa_a));
    const auto diag = boundary_diagnostic(s);
    CHECK(diag.start_ratio > 0.1);
    CHECK(boundary_diagnostic(s, ramp).start_ratio == Approx(0.0).scale(1.0));
}
