#include "wpt/coupling.hpp"
#include "wpt/error.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace wpt;
using doctest::Approx;

TEST_CASE("saturating distance law")
{
    const DistanceModel m{DistanceForm::Saturating, 1e5, 0.7, 3.0};
    CHECK(kappa_of_distance(m, 0.7) == Approx(5e4));
    CHECK(kappa_of_distance(m, 0.0) == Approx(1e5));
    CHECK(kappa_of_distance(m, 1e-6) == Approx(1e5));
    CHECK_THROWS_AS(kappa_of_distance(m, -0.1), DomainError);
}

TEST_CASE("power law distance law")
{
    const DistanceModel m{DistanceForm::PowerLaw, 2e4, 0.5, 3.0};
    CHECK(kappa_of_distance(m, 1.0) == Approx(2e4 / 8));
    CHECK(kappa_of_distance(m, 0.5) == Approx(2e4));
    CHECK_THROWS_AS(kappa_of_distance(m, 0.0), DomainError);
    CHECK_THROWS_AS(kappa_of_distance(m, -1.0), DomainError);
}

TEST_CASE("coupling decreases strictly with distance")
{
    for (auto form : {DistanceForm::Saturating, DistanceForm::PowerLaw}) {
        const DistanceModel m{form, 1e5, 0.6934, 3.0};
        double prev = kappa_of_distance(m, 0.05);
        for (double d = 0.1; d < 5.0; d += 0.05) {
            const double k = kappa_of_distance(m, d);
            CHECK(k < prev);
            prev = k;
        }
    }
}

TEST_CASE("default model puts the loss scale near two metres")
{
    CHECK(kappa_of_distance(DistanceModel{}, 2.0) == Approx(4e3).epsilon(1e-3));
}

TEST_CASE("distance model validation and names")
{
    CHECK_NOTHROW(DistanceModel{}.validate());
    CHECK_THROWS_AS((DistanceModel{DistanceForm::Saturating, 0.0, 1.0, 3.0}.validate()), InvalidParameter);
    CHECK_THROWS_AS((DistanceModel{DistanceForm::Saturating, 1.0, -1.0, 3.0}.validate()), InvalidParameter);
    CHECK_THROWS_AS((DistanceModel{DistanceForm::PowerLaw, 1.0, 1.0, 0.0}.validate()), InvalidParameter);
    CHECK(distance_form_from_string("power-law") == DistanceForm::PowerLaw);
    CHECK(to_string(DistanceForm::Saturating) == "saturating");
    CHECK_THROWS_AS(distance_form_from_string("gaussian"), InvalidParameter);
}

TEST_CASE("coupling from mutual inductance")
{
    CHECK(kappa_from_inductance(0.0, 1e6, 1e6, 1e-4, 1e-4) == 0.0);
    CHECK(kappa_from_inductance(2e-6, 5e5, 5e5, 3e-4, 3e-4) == Approx(2e-6 * 5e5 / 3e-4));
    CHECK(kappa_from_inductance(1e-6, 1e6, 1e6, 1e-4, 1e-4) == Approx(1e4));
    CHECK(kappa_from_inductance(1e-6, 1e6, 4e6, 1e-4, 4e-4) == Approx(1e-6 * std::sqrt(4e12 / 4e-8)));
    CHECK_THROWS_AS(kappa_from_inductance(-1e-6, 1e6, 1e6, 1e-4, 1e-4), DomainError);
    CHECK_THROWS_AS(kappa_from_inductance(1e-6, 0.0, 1e6, 1e-4, 1e-4), DomainError);
    CHECK_THROWS_AS(kappa_from_inductance(1e-6, 1e6, 1e6, 1e-4, 0.0), DomainError);
}

TEST_CASE("distance study")
{
    const DistanceModel model;
    const auto tmpl = DriveSchedule::landau_zener(4e4, 2e5, 3e9, 1e-4);
    const CoilPair coils{4e3, 4e3, 1e4};
    const std::vector<double> grid{1.0, 1.5, 2.0, 2.5};
    IntegratorConfig cfg;
    cfg.sample_count = 1000;
    const auto rows = distance_study(model, tmpl, coils, grid, cfg);
    REQUIRE(rows.size() == grid.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        CHECK(r.d == grid[i]);
        CHECK(r.kappa == Approx(kappa_of_distance(model, r.d)));
        CHECK(r.kappa_a_peak == Approx(3e9 / (4 * r.kappa)));
        CHECK(r.kappa_eff_peak * r.kappa_eff_peak == Approx(r.kappa * r.kappa + r.kappa_a_peak * r.kappa_a_peak));
        CHECK(r.eta_tqd >= r.eta_adiabatic - 1e-3);
        CHECK(r.audit_adiabatic < 1e-5);
        CHECK(r.audit_tqd < 1e-5);
        if (i > 0) {
            CHECK(r.kappa_a_peak > rows[i - 1].kappa_a_peak);
            CHECK(r.eta_adiabatic <= rows[i - 1].eta_adiabatic);
        }
    }

    const auto serial = distance_study_serial(model, tmpl, coils, grid, cfg);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(serial[i].eta_adiabatic == rows[i].eta_adiabatic);
        CHECK(serial[i].eta_tqd == rows[i].eta_tqd);
    }

    CHECK_THROWS_AS(distance_study(model, tmpl, coils, std::vector<double>{}, cfg), InvalidParameter);
    CHECK_THROWS_AS(distance_study(model, tmpl, coils, std::vector<double>{2.0, 1.0}, cfg), InvalidParameter);
}
